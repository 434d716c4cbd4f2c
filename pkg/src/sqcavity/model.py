"""Physical parameters and model assembly for both frames.

The lab frame carries the bare cavity mode with the degenerate parametric
drive (Omega_p, theta_p); the squeezed frame carries the Bogoliubov mode
a_s = cosh(r) a + sinh(r) a^dag, in which the parametric Hamiltonian is
diagonal with frequency omega_s and the cavity decay appears as a squeezed
reservoir with parameters N_s = sinh^2(r), M_s = cosh(r) sinh(r).

All rates are expressed in units of the cavity decay kappa.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import RWAValidityWarning, ThresholdError
from .operators import (
    FockOperator,
    HilbertDims,
    atom_ops,
    cavity_destroy,
    destroy,
    squeeze_matrix,
)

LAB = "lab"
SQUEEZED = "squeezed"
FRAMES = (LAB, SQUEEZED)

PARAM_TOL = 1e-12
RWA_RATIO_LIMIT = 0.1


# ---------------------------------------------------------------------------
# parameter derivations
# ---------------------------------------------------------------------------

def squeezing_param(delta_c: float, omega_p_amp: float) -> float:
    """Squeezing parameter r = (1/4) ln[(Delta_c + Omega_p)/(Delta_c - Omega_p)]."""
    _check_below_threshold(delta_c, omega_p_amp)
    return 0.25 * np.log((delta_c + omega_p_amp) / (delta_c - omega_p_amp))


def pump_amplitude(delta_c: float, r: float) -> float:
    """Inverse of :func:`squeezing_param`: Omega_p = Delta_c tanh(2r)."""
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    return delta_c * np.tanh(2.0 * r)


def squeezed_frequency(delta_c: float, omega_p_amp: float) -> float:
    """Squeezed-mode frequency omega_s = sqrt(Delta_c^2 - Omega_p^2)."""
    _check_below_threshold(delta_c, omega_p_amp)
    return float(np.sqrt(delta_c**2 - omega_p_amp**2))


def enhanced_couplings(g0: float, r: float) -> tuple[float, float]:
    """(g_s, g_s') = (g0 cosh r, g0 sinh r)."""
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    return g0 * np.cosh(r), g0 * np.sinh(r)


def noise_params(r: float) -> tuple[float, float]:
    """Squeezed-reservoir parameters (N_s, M_s) = (sinh^2 r, cosh r sinh r)."""
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    return float(np.sinh(r) ** 2), float(np.sinh(r) * np.cosh(r))


def _check_below_threshold(delta_c: float, omega_p_amp: float):
    if omega_p_amp < 0:
        raise ValueError("pump amplitude must be >= 0")
    if omega_p_amp >= delta_c:
        raise ThresholdError(
            f"Omega_p = {omega_p_amp} is at or above threshold Delta_c = {delta_c}"
        )


# ---------------------------------------------------------------------------
# parameter container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelParams:
    """All physical parameters of one scenario, with derived-value invariants."""

    kappa: float
    gamma: float
    g0: float
    delta_c: float
    omega_p_amp: float
    theta_p: float
    delta_A: float
    r: float
    omega_s: float
    frame: str
    atom_present: bool

    def __post_init__(self):
        if self.frame not in FRAMES:
            raise ValueError(f"frame must be one of {FRAMES}")
        _check_below_threshold(self.delta_c, self.omega_p_amp)
        r_expected = squeezing_param(self.delta_c, self.omega_p_amp)
        if abs(self.r - r_expected) > PARAM_TOL * max(1.0, abs(r_expected)):
            raise ValueError(
                f"stored r = {self.r} inconsistent with (Delta_c, Omega_p): "
                f"expected {r_expected}"
            )
        w_expected = squeezed_frequency(self.delta_c, self.omega_p_amp)
        if abs(self.omega_s - w_expected) > PARAM_TOL * max(1.0, abs(w_expected)):
            raise ValueError(
                f"stored omega_s = {self.omega_s} inconsistent: expected {w_expected}"
            )

    @classmethod
    def for_squeezing(
        cls,
        delta_c: float,
        r: float,
        *,
        g0: float,
        gamma: float,
        kappa: float = 1.0,
        atom_present: bool = True,
        frame: str = SQUEEZED,
        theta_p: float = 0.0,
        delta_A: float | None = None,
    ) -> "ModelParams":
        """Build a parameter set from (Delta_c, r), deriving Omega_p and omega_s.

        The atomic detuning defaults to resonance with the squeezed mode,
        Delta_A = omega_s.
        """
        omega_p = pump_amplitude(delta_c, r)
        omega_s = squeezed_frequency(delta_c, omega_p)
        if delta_A is None:
            delta_A = omega_s
        return cls(
            kappa=kappa,
            gamma=gamma,
            g0=g0,
            delta_c=delta_c,
            omega_p_amp=omega_p,
            theta_p=theta_p,
            delta_A=delta_A,
            r=float(r),
            omega_s=omega_s,
            frame=frame,
            atom_present=atom_present,
        )

    def with_frame(self, frame: str) -> "ModelParams":
        return replace(self, frame=frame)

    @property
    def g_s(self) -> float:
        return enhanced_couplings(self.g0, self.r)[0]

    @property
    def g_s_prime(self) -> float:
        return enhanced_couplings(self.g0, self.r)[1]

    def rwa_ratio(self) -> float:
        """|g_s'| / (omega_s + Delta_A): must be << 1 for the RWA to hold."""
        return abs(self.g_s_prime) / (self.omega_s + self.delta_A)


# ---------------------------------------------------------------------------
# dissipators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DissipatorSpec:
    """One dissipation channel.

    A plain channel contributes rate * (C rho C^dag - {C^dag C, rho}/2) with
    C = jump_operator. Each cross term ((A, B), c) contributes the
    two-photon-correlation bracket (c/2)(A B rho - 2 B rho A + rho A B).
    """

    jump_operator: FockOperator | None
    rate: float = 0.0
    cross_terms: tuple[tuple[tuple[FockOperator, FockOperator], complex], ...] = ()


def build_dissipators(params: ModelParams, dims: HilbertDims) -> list[DissipatorSpec]:
    """Dissipator set of the master equation in the requested frame.

    The atomic decay channel is kept even for the empty cavity (the atom is
    then inert in its ground state); this keeps the Liouvillian null space
    one-dimensional with the atomic factor retained.
    """
    a = destroy(dims)
    _, _, sge = atom_ops(dims)
    if params.frame == LAB:
        return [
            DissipatorSpec(a, params.kappa),
            DissipatorSpec(sge, params.gamma),
        ]
    n_s, m_s = noise_params(params.r)
    adag = a.dag()
    cross = (
        ((a, a), params.kappa * m_s),
        ((adag, adag), params.kappa * m_s),  # M_s is real for theta_p = 0
    )
    return [
        DissipatorSpec(a, params.kappa * (n_s + 1.0)),
        DissipatorSpec(adag, params.kappa * n_s),
        DissipatorSpec(sge, params.gamma),
        DissipatorSpec(None, 0.0, cross_terms=cross),
    ]


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------

def _assert_hermitian(h: FockOperator):
    defect = h.hermiticity_defect()
    scale = max(1.0, float(np.abs(h.matrix).max()))
    if defect > 1e-12 * scale:
        raise AssertionError(f"assembled Hamiltonian not Hermitian: defect {defect:.2e}")


def build_hamiltonian_lab(params: ModelParams, dims: HilbertDims) -> FockOperator:
    """Lab-frame Hamiltonian: atomic detuning + JC coupling + parametric drive."""
    a = destroy(dims)
    am, adm = a.matrix, a.matrix.conj().T
    see, seg, sge = atom_ops(dims)
    g0 = params.g0 if params.atom_present else 0.0
    h = (
        params.delta_A * see.matrix
        + g0 * (am @ seg.matrix + adm @ sge.matrix)
        + params.delta_c * (adm @ am)
        + 0.5
        * params.omega_p_amp
        * (np.exp(1j * params.theta_p) * (am @ am) + np.exp(-1j * params.theta_p) * (adm @ adm))
    )
    op = FockOperator(dims, h, "H_lab")
    _assert_hermitian(op)
    return op


def build_hamiltonian_squeezed(
    params: ModelParams, dims: HilbertDims, rwa: bool = True
) -> FockOperator:
    """Squeezed-frame Hamiltonian.

    With ``rwa=True`` (the default) the counter-rotating coupling terms are
    dropped, which is the approximation used for all reported scenarios; a
    warning is raised when |g_s'|/(omega_s + Delta_A) >= 0.1. With
    ``rwa=False`` the full Bogoliubov-transformed coupling is kept, making
    the frame change exact (used for cross-validation).
    """
    a = destroy(dims)
    am, adm = a.matrix, a.matrix.conj().T
    see, seg, sge = atom_ops(dims)
    g_s, g_sp = enhanced_couplings(params.g0, params.r)
    if not params.atom_present:
        g_s, g_sp = 0.0, 0.0
    h = params.delta_A * see.matrix + params.omega_s * (adm @ am)
    if rwa:
        if params.atom_present and params.rwa_ratio() >= RWA_RATIO_LIMIT:
            warnings.warn(
                f"RWA ratio |g_s'|/(omega_s + Delta_A) = {params.rwa_ratio():.3f} "
                ">= 0.1; counter-rotating terms may not be negligible",
                RWAValidityWarning,
                stacklevel=2,
            )
        h = h + g_s * (am @ seg.matrix + adm @ sge.matrix)
    else:
        h = h + (g_s * am - g_sp * adm) @ seg.matrix + (g_s * adm - g_sp * am) @ sge.matrix
    op = FockOperator(dims, h, "H_squeezed")
    _assert_hermitian(op)
    return op


# ---------------------------------------------------------------------------
# diagonalization certificate
# ---------------------------------------------------------------------------

def diagonalization_residual(
    params: ModelParams, dims: HilbertDims, r: float | None = None
) -> float:
    """Residual of S(r)^dag H_NL S(r) against omega_s a^dag a + const.

    Evaluated on the cavity factor only, over the lower 2/3 of the Fock block
    of ``dims``. The conjugation is carried out at an internally enlarged
    cutoff (squeezing spreads Fock level n to roughly n e^{2r}) so the
    reported residual certifies the algebraic identity rather than boundary
    leakage. The constant offset is fitted and discarded.
    """
    if abs(params.theta_p) > 0:
        raise ValueError("residual certificate assumes theta_p = 0")
    if r is None:
        r = params.r
    block = (2 * dims.cavity_dim) // 3
    work_dim = int(np.ceil((dims.cavity_dim + 10) * np.exp(2.0 * abs(r)))) + 20
    a = cavity_destroy(work_dim)
    adag = a.conj().T
    num = adag @ a
    h_nl = params.delta_c * num + 0.5 * params.omega_p_amp * (a @ a + adag @ adag)
    s = squeeze_matrix(work_dim, r)
    conj = s.conj().T @ h_nl @ s
    diff = conj - params.omega_s * num
    const = np.mean(np.real(np.diag(diff)[:block]))
    resid = diff[:block, :block] - const * np.eye(block)
    return float(np.abs(resid).max())
