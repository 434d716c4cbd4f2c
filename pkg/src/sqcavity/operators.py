"""Elementary operators on the truncated atom-cavity Hilbert space.

Conventions, fixed once for the whole package:

* Tensor ordering is atom (x) cavity. A composite basis index is
  ``i = s * (N_max + 1) + n`` with atom level ``s`` (0 = ground, 1 = excited)
  and Fock level ``n``.
* Vectorization is column stacking (Fortran order), so
  ``vec(A @ rho @ B) = kron(B.T, A) @ vec(rho)``.

All factories are pure functions returning immutable operators; the same
inputs give bit-identical matrices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CutoffWarning,
    DimensionMismatchError,
    PositivityWarning,
    TruncationError,
)

UNITARITY_TOL = 1e-8
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8
TAIL_TOL = 1e-6


@dataclass(frozen=True)
class HilbertDims:
    """Dimensions of the composite atom (x) cavity space.

    ``fock_cutoff`` is the highest retained Fock level N_max; the cavity
    subspace has N_max + 1 levels.
    """

    fock_cutoff: int
    atom_dim: int = 2

    def __post_init__(self):
        if self.atom_dim != 2:
            raise DimensionMismatchError("atom_dim is fixed to 2")
        if self.fock_cutoff < 2:
            raise DimensionMismatchError("fock_cutoff must be >= 2")

    @property
    def cavity_dim(self) -> int:
        return self.fock_cutoff + 1

    @property
    def total_dim(self) -> int:
        return self.atom_dim * self.cavity_dim

    def index(self, atom_level: int, n: int) -> int:
        """Composite basis index of |atom_level, n>."""
        if not (0 <= atom_level < self.atom_dim and 0 <= n < self.cavity_dim):
            raise DimensionMismatchError("basis label out of range")
        return atom_level * self.cavity_dim + n


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(matrix, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class FockOperator:
    """A complex matrix on the composite space, tagged with its dimensions."""

    dims: HilbertDims
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = self.matrix
        d = self.dims.total_dim
        if m.shape != (d, d):
            raise DimensionMismatchError(
                f"matrix shape {m.shape} does not match total dim {d}"
            )
        object.__setattr__(self, "matrix", _frozen(m))

    def _check(self, other: "FockOperator"):
        if self.dims != other.dims:
            raise DimensionMismatchError("operators built from different dims")

    def dag(self) -> "FockOperator":
        return FockOperator(self.dims, self.matrix.conj().T, self.label + "^dag")

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.matrix @ other.matrix)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.matrix + other.matrix)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.dims, self.matrix - other.matrix)

    def __rmul__(self, scalar) -> "FockOperator":
        return FockOperator(self.dims, scalar * self.matrix, self.label)

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())


# ---------------------------------------------------------------------------
# cavity-factor matrices (used directly by observables on reduced states)
# ---------------------------------------------------------------------------

def cavity_destroy(cavity_dim: int) -> np.ndarray:
    """Annihilation matrix on a cavity factor of the given dimension."""
    return np.diag(np.sqrt(np.arange(1, cavity_dim, dtype=float)), k=1).astype(complex)


def _expm_skew(generator: np.ndarray) -> np.ndarray:
    """Matrix exponential of an anti-Hermitian generator via eigendecomposition.

    exp(G) with G^dag = -G is computed from the Hermitian matrix iG, so the
    result is unitary to machine precision at any truncation.
    """
    herm = 1j * generator
    defect = np.abs(herm - herm.conj().T).max()
    if defect > 1e-10 * max(1.0, np.abs(herm).max()):
        raise ValueError("generator is not anti-Hermitian")
    w, v = np.linalg.eigh(herm)
    return (v * np.exp(-1j * w)) @ v.conj().T


def squeeze_matrix(cavity_dim: int, r: float, theta: float = 0.0) -> np.ndarray:
    """Squeeze unitary exp[(r/2)(e^{-i theta} a^2 - e^{i theta} a^dag^2)] on the cavity factor."""
    a = cavity_destroy(cavity_dim)
    a2 = a @ a
    gen = 0.5 * r * (np.exp(-1j * theta) * a2 - np.exp(1j * theta) * a2.conj().T)
    s = _expm_skew(gen)
    _check_unitarity(s, "squeeze operator")
    return s


def displacement_matrix(cavity_dim: int, alpha: complex) -> np.ndarray:
    """Displacement unitary exp(alpha a^dag - alpha* a) on the cavity factor."""
    a = cavity_destroy(cavity_dim)
    gen = alpha * a.conj().T - np.conj(alpha) * a
    d = _expm_skew(gen)
    _check_unitarity(d, "displacement operator")
    return d


def _check_unitarity(u: np.ndarray, what: str):
    """Unitarity defect on the lower 2/3 of the Fock block."""
    k = (2 * u.shape[0]) // 3
    defect = np.abs((u.conj().T @ u - np.eye(u.shape[0]))[:k, :k]).max()
    if defect >= UNITARITY_TOL:
        raise TruncationError(
            f"{what}: unitarity defect {defect:.2e} on the lower 2/3 Fock block; "
            "increase fock_cutoff"
        )


# ---------------------------------------------------------------------------
# composite-space factories
# ---------------------------------------------------------------------------

def identity(dims: HilbertDims) -> FockOperator:
    return FockOperator(dims, np.eye(dims.total_dim, dtype=complex), "I")


def destroy(dims: HilbertDims) -> FockOperator:
    """Cavity annihilation operator, identity on the atom factor."""
    a = cavity_destroy(dims.cavity_dim)
    return FockOperator(dims, np.kron(np.eye(dims.atom_dim), a), "a")


def number(dims: HilbertDims) -> FockOperator:
    a = destroy(dims)
    return FockOperator(dims, a.matrix.conj().T @ a.matrix, "a^dag a")


def atom_ops(dims: HilbertDims) -> tuple[FockOperator, FockOperator, FockOperator]:
    """(sigma_ee, sigma_eg, sigma_ge), identity on the cavity factor."""
    ic = np.eye(dims.cavity_dim)
    see = np.array([[0, 0], [0, 1]], dtype=complex)
    seg = np.array([[0, 0], [1, 0]], dtype=complex)  # |e><g| with (g, e) ordering
    return (
        FockOperator(dims, np.kron(see, ic), "sigma_ee"),
        FockOperator(dims, np.kron(seg, ic), "sigma_eg"),
        FockOperator(dims, np.kron(seg.conj().T, ic), "sigma_ge"),
    )


def squeeze_operator(dims: HilbertDims, r: float, theta: float = 0.0) -> FockOperator:
    s = squeeze_matrix(dims.cavity_dim, r, theta)
    return FockOperator(dims, np.kron(np.eye(dims.atom_dim), s), f"S({r})")


def displacement_operator(dims: HilbertDims, alpha: complex) -> FockOperator:
    d = displacement_matrix(dims.cavity_dim, alpha)
    return FockOperator(dims, np.kron(np.eye(dims.atom_dim), d), f"D({alpha})")


def basis_ket(dims: HilbertDims, atom_level: int, n: int) -> np.ndarray:
    ket = np.zeros(dims.total_dim, dtype=complex)
    ket[dims.index(atom_level, n)] = 1.0
    return ket


# ---------------------------------------------------------------------------
# vectorization (column stacking)
# ---------------------------------------------------------------------------

def vectorize(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a square matrix into a vector."""
    return np.asarray(matrix, dtype=complex).flatten(order="F")


def unvectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    d = int(round(np.sqrt(vec.size)))
    if d * d != vec.size:
        raise DimensionMismatchError("vector length is not a perfect square")
    return np.asarray(vec, dtype=complex).reshape((d, d), order="F")


# ---------------------------------------------------------------------------
# density matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, (numerically) positive state on the composite space."""

    dims: HilbertDims
    matrix: np.ndarray

    def __post_init__(self):
        d = self.dims.total_dim
        if self.matrix.shape != (d, d):
            raise DimensionMismatchError("density matrix shape mismatch")
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    @classmethod
    def from_matrix(cls, dims: HilbertDims, matrix: np.ndarray, check: bool = True) -> "DensityMatrix":
        rho = cls(dims, np.asarray(matrix, dtype=complex))
        if check:
            rho.validate()
        return rho

    @classmethod
    def from_ket(cls, dims: HilbertDims, ket: np.ndarray) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=complex)
        ket = ket / np.linalg.norm(ket)
        return cls(dims, np.outer(ket, ket.conj()))

    def validate(self):
        m = self.matrix
        herm = np.abs(m - m.conj().T).max()
        if herm > HERMITICITY_TOL:
            raise ValueError(f"hermiticity defect {herm:.2e} > {HERMITICITY_TOL}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} deviates from 1 beyond {TRACE_TOL}")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -POSITIVITY_TOL:
            raise ValueError(f"minimum eigenvalue {evals.min():.2e} < -{POSITIVITY_TOL}")
        if evals.min() < 0:
            warnings.warn(
                f"state has a small negative eigenvalue {evals.min():.2e} "
                "(within tolerance, not clipped)",
                PositivityWarning,
                stacklevel=2,
            )

    def cavity_state(self) -> np.ndarray:
        """Reduced cavity density matrix (partial trace over the atom)."""
        c = self.dims.cavity_dim
        r = self.matrix.reshape(self.dims.atom_dim, c, self.dims.atom_dim, c)
        return r[0, :, 0, :] + r[1, :, 1, :]

    def cavity_populations(self) -> np.ndarray:
        return np.real(np.diag(self.cavity_state()))

    def tail_population(self) -> float:
        """Total population above Fock level floor(0.8 * N_max)."""
        top = int(np.floor(0.8 * self.dims.fock_cutoff))
        return float(self.cavity_populations()[top + 1 :].sum())

    def check_cutoff(self, tol: float = TAIL_TOL) -> float:
        """Warn if population leaked near the truncation boundary."""
        tail = self.tail_population()
        if tail > tol:
            warnings.warn(
                f"population {tail:.2e} above Fock level "
                f"{int(np.floor(0.8 * self.dims.fock_cutoff))}; cutoff may be "
                "insufficient",
                CutoffWarning,
                stacklevel=2,
            )
        return tail
