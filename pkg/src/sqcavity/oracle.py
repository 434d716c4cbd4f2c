"""Independent references used to validate the main solver.

Nothing here shares Liouvillian-assembly code with :mod:`sqcavity.dynamics`:
the brute-force propagator builds its superoperator column by column from a
term-by-term evaluation of the master-equation right-hand side, and the
Gaussian oracle solves the closed moment equations of the empty cavity.

Moment-equation derivation (empty cavity, lab frame, theta_p = 0). With
H = Delta_c a^dag a + (Omega_p/2)(a^2 + a^dag^2) and decay kappa D[a], the
adjoint equations for n = <a^dag a> and m = <a^2> = x + i y close:

    dn/dt = -kappa n - 2 Omega_p y
    dx/dt = -kappa x + 2 Delta_c y
    dy/dt = -2 Omega_p n - 2 Delta_c x - kappa y - Omega_p

obtained from d<O>/dt = i<[H, O]> + kappa <a^dag O a - {a^dag a, O}/2> with
[a^2, a^dag a] = 2 a^2, [a^dag 2, a^2] = -(4 a^dag a + 2) and
D^dag[a](a^2) = -a^2. The steady state is the unique solution of the 3x3
real linear system when the homogeneous drift is stable (below threshold).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DimensionMismatchError, ThresholdError
from .model import DissipatorSpec
from .operators import DensityMatrix, FockOperator, unvectorize, vectorize


@dataclass(frozen=True)
class GaussianMoments:
    """Steady second moments of the quadratic (atom-absent) lab-frame model."""

    n: float
    m: complex


def empty_cavity_steady_moments(
    delta_c: float, omega_p_amp: float, kappa: float
) -> GaussianMoments:
    """Solve the closed 3-variable moment system for (n, Re m, Im m)."""
    drift = np.array(
        [
            [-kappa, 0.0, -2.0 * omega_p_amp],
            [0.0, -kappa, 2.0 * delta_c],
            [-2.0 * omega_p_amp, -2.0 * delta_c, -kappa],
        ]
    )
    if np.max(np.linalg.eigvals(drift).real) >= 0:
        raise ThresholdError(
            "moment system unstable: parameters at or above threshold"
        )
    inhom = np.array([0.0, 0.0, -omega_p_amp])
    n, x, y = np.linalg.solve(drift, -inhom)
    return GaussianMoments(n=float(n), m=complex(x, y))


# ---------------------------------------------------------------------------
# brute-force propagation for small systems
# ---------------------------------------------------------------------------

def master_equation_rhs(
    rho: np.ndarray, hamiltonian: FockOperator, dissipators: list[DissipatorSpec]
) -> np.ndarray:
    """Right-hand side of the master equation by direct matrix products.

    This is the definitional, term-by-term evaluation used as the action
    oracle for the vectorized Liouvillian.
    """
    h = hamiltonian.matrix
    out = 1j * (rho @ h - h @ rho)
    for spec in dissipators:
        if spec.jump_operator is not None and spec.rate != 0.0:
            c = spec.jump_operator.matrix
            cd = c.conj().T
            cdc = cd @ c
            out = out + spec.rate * (c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc))
        for (op_a, op_b), coeff in spec.cross_terms:
            am, bm = op_a.matrix, op_b.matrix
            ab = am @ bm
            out = out + 0.5 * coeff * (ab @ rho - 2.0 * (bm @ rho @ am) + rho @ ab)
    return out


def small_system_brute_force(
    hamiltonian: FockOperator,
    dissipators: list[DissipatorSpec],
    rho0: DensityMatrix,
    t: float,
) -> DensityMatrix:
    """Propagate exp(t L) rho0 by a dense matrix exponential.

    Restricted to composite dimension <= 8; intended purely as an
    integrator-independent reference.
    """
    dims = hamiltonian.dims
    if dims.total_dim > 8:
        raise DimensionMismatchError(
            f"brute-force propagator limited to dimension 8, got {dims.total_dim}"
        )
    if rho0.dims != dims:
        raise DimensionMismatchError("state dims mismatch")
    d = dims.total_dim
    superop = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d * d):
        basis = np.zeros(d * d, dtype=complex)
        basis[k] = 1.0
        superop[:, k] = vectorize(
            master_equation_rhs(unvectorize(basis), hamiltonian, dissipators)
        )
    final = unvectorize(expm(t * superop) @ vectorize(rho0.matrix))
    final = 0.5 * (final + final.conj().T)
    return DensityMatrix.from_matrix(dims, final, check=False)
