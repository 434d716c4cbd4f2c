"""Liouvillian construction, time evolution, and steady-state solvers.

The Liouvillian is stored as a sparse matrix acting on column-stacked density
matrices. Desk-scale problems (composite dimension up to a few hundred) are
solved with a sparse LU factorization; an eigenvector-based solver is kept as
an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.integrate import solve_ivp

from .errors import (
    ConvergenceError,
    DegenerateSteadyStateError,
    DimensionMismatchError,
)
from .model import DissipatorSpec
from .operators import DensityMatrix, FockOperator, HilbertDims, unvectorize, vectorize

STEADY_RESIDUAL_TOL = 1e-10
NULL_SPACE_TOL = 1e-8
TRACE_DRIFT_TOL = 1e-8


@dataclass(frozen=True)
class Liouvillian:
    """Superoperator matrix of one master equation under column stacking."""

    dims: HilbertDims
    matrix: sp.csr_matrix
    frame: str

    @property
    def superop_dim(self) -> int:
        return self.dims.total_dim**2

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Action of the generator on a density matrix, as a matrix."""
        return unvectorize(self.matrix @ vectorize(rho))

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def build_liouvillian(
    hamiltonian: FockOperator,
    dissipators: list[DissipatorSpec],
    frame: str = "lab",
) -> Liouvillian:
    """Assemble the generator rho -> i[rho, H] + dissipative terms.

    Plain channels enter in standard Lindblad form; cross terms ((A, B), c)
    contribute (c/2)(A B rho - 2 B rho A + rho A B), covering the two-photon
    correlation lines of the squeezed-frame master equation.
    """
    dims = hamiltonian.dims
    d = dims.total_dim
    eye = sp.identity(d, format="csr", dtype=complex)
    h = sp.csr_matrix(hamiltonian.matrix)
    # i[rho, H] = i (rho H - H rho)
    gen = 1j * (sp.kron(h.T, eye) - sp.kron(eye, h))
    for spec in dissipators:
        if spec.jump_operator is not None and spec.rate != 0.0:
            if spec.jump_operator.dims != dims:
                raise DimensionMismatchError("dissipator dims mismatch")
            c = sp.csr_matrix(spec.jump_operator.matrix)
            cdc = (c.conj().T @ c).tocsr()
            gen = gen + spec.rate * (
                sp.kron(c.conj(), c)
                - 0.5 * sp.kron(eye, cdc)
                - 0.5 * sp.kron(cdc.T, eye)
            )
        for (op_a, op_b), coeff in spec.cross_terms:
            if op_a.dims != dims or op_b.dims != dims:
                raise DimensionMismatchError("cross-term dims mismatch")
            am = sp.csr_matrix(op_a.matrix)
            bm = sp.csr_matrix(op_b.matrix)
            ab = (am @ bm).tocsr()
            gen = gen + 0.5 * coeff * (
                sp.kron(eye, ab) + sp.kron(ab.T, eye) - 2.0 * sp.kron(am.T, bm)
            )
    return Liouvillian(dims, gen.tocsr(), frame)


# ---------------------------------------------------------------------------
# steady state
# ---------------------------------------------------------------------------

def _trace_row(d: int) -> sp.csr_matrix:
    cols = np.arange(d) * (d + 1)
    return sp.csr_matrix(
        (np.ones(d), (np.zeros(d, dtype=int), cols)), shape=(1, d * d), dtype=complex
    )


def null_space_gap(liouv: Liouvillian) -> tuple[float, float]:
    """Magnitudes of the two smallest-|eigenvalue| modes of the generator."""
    n = liouv.superop_dim
    if n <= 4900:
        evals = np.linalg.eigvals(liouv.dense())
        mags = np.sort(np.abs(evals))
        return float(mags[0]), float(mags[1])
    evals = spla.eigs(
        liouv.matrix.tocsc(), k=2, sigma=0.0, which="LM", return_eigenvectors=False
    )
    mags = np.sort(np.abs(evals))
    return float(mags[0]), float(mags[1])


def steady_state(
    liouv: Liouvillian,
    method: str = "direct",
    ensure_unique: bool = False,
    check: bool = True,
) -> DensityMatrix:
    """Solve L(rho) = 0 with Tr(rho) = 1.

    ``direct`` replaces one row of the generator with the trace constraint
    and solves with a sparse LU; ``eig`` extracts the null eigenvector
    (dense, for cross-validation on small systems). Both verify the residual
    ||L(rho)||_max afterwards.
    """
    d = liouv.dims.total_dim
    n = d * d
    if ensure_unique:
        lam0, lam1 = null_space_gap(liouv)
        if lam1 < NULL_SPACE_TOL:
            raise DegenerateSteadyStateError(
                f"two Liouvillian eigenvalues within {NULL_SPACE_TOL} of zero "
                f"({lam0:.2e}, {lam1:.2e}); unphysical parameters or cutoff too small"
            )
    if method == "direct":
        body = liouv.matrix[1:, :]
        a = sp.vstack([_trace_row(d), body]).tocsc()
        b = np.zeros(n, dtype=complex)
        b[0] = 1.0
        try:
            x = spla.splu(a).solve(b)
        except RuntimeError as exc:  # singular factorization
            raise DegenerateSteadyStateError(str(exc)) from exc
    elif method == "eig":
        evals, evecs = np.linalg.eig(liouv.dense())
        order = np.argsort(np.abs(evals))
        if np.abs(evals[order[1]]) < NULL_SPACE_TOL:
            raise DegenerateSteadyStateError(
                "degenerate null space in eigenvector extraction"
            )
        x = evecs[:, order[0]]
    else:
        raise ValueError(f"unknown steady-state method {method!r}")
    rho = unvectorize(x)
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    residual = float(np.abs(liouv.apply(rho)).max())
    scale = max(1.0, float(np.abs(liouv.matrix).max()))
    if residual > STEADY_RESIDUAL_TOL * scale:
        raise ConvergenceError(
            f"steady-state residual {residual:.2e} exceeds tolerance "
            f"{STEADY_RESIDUAL_TOL * scale:.2e}"
        )
    state = DensityMatrix.from_matrix(liouv.dims, rho, check=check)
    state.check_cutoff()
    return state


def steady_state_residual(liouv: Liouvillian, rho: DensityMatrix) -> float:
    return float(np.abs(liouv.apply(rho.matrix)).max())


# ---------------------------------------------------------------------------
# time evolution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trajectory:
    """Solution of the master equation on a time grid (units of 1/kappa)."""

    times: np.ndarray
    states: list[DensityMatrix]

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if np.any(np.diff(t) <= 0):
            raise ValueError("time grid must be strictly increasing")

    @property
    def final(self) -> DensityMatrix:
        return self.states[-1]


def evolve(
    rho0: DensityMatrix,
    liouv: Liouvillian,
    t_grid: np.ndarray,
    rtol: float = 1e-9,
    atol: float = 1e-12,
    method: str = "adaptive",
    fixed_steps_per_unit: int = 200,
) -> Trajectory:
    """Integrate d rho/dt = L(rho) on the given time grid.

    ``adaptive`` uses an explicit adaptive Runge-Kutta scheme with per-step
    tolerance control; ``fixed`` uses classic RK4 with a fixed substep count
    per unit time for bit-reproducible trajectories.
    """
    if rho0.dims != liouv.dims:
        raise DimensionMismatchError("state and Liouvillian dims mismatch")
    t_grid = np.asarray(t_grid, dtype=float)
    y0 = vectorize(rho0.matrix)
    lm = liouv.matrix

    if method == "adaptive":
        sol = solve_ivp(
            lambda t, y: lm @ y,
            (t_grid[0], t_grid[-1]),
            y0,
            t_eval=t_grid,
            method="DOP853",
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            raise ConvergenceError(f"integrator failed: {sol.message}")
        columns = sol.y.T
    elif method == "fixed":
        columns = [y0]
        y = y0
        for t_a, t_b in zip(t_grid[:-1], t_grid[1:]):
            steps = max(1, int(np.ceil((t_b - t_a) * fixed_steps_per_unit)))
            h = (t_b - t_a) / steps
            for _ in range(steps):
                k1 = lm @ y
                k2 = lm @ (y + 0.5 * h * k1)
                k3 = lm @ (y + 0.5 * h * k2)
                k4 = lm @ (y + h * k3)
                y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            columns.append(y)
        columns = np.array(columns)
    else:
        raise ValueError(f"unknown evolve method {method!r}")

    states = []
    for col in columns:
        m = unvectorize(col)
        drift = abs(np.trace(m) - 1.0)
        if drift > TRACE_DRIFT_TOL:
            raise ConvergenceError(f"trace drift {drift:.2e} exceeds {TRACE_DRIFT_TOL}")
        m = 0.5 * (m + m.conj().T)
        states.append(DensityMatrix.from_matrix(liouv.dims, m, check=False))
    states[-1].validate()
    states[-1].check_cutoff()
    return Trajectory(t_grid, states)
