"""Discrimination signals: moments, output flux, photon distributions, Wigner.

Frame bookkeeping: a squeezed-frame density matrix stores the state such
that expectations of the bare ladder matrices equal lab-frame expectations
of the Bogoliubov mode a_s. The two frames are related by the squeeze
unitary S(r) = exp[(r/2)(a^2 - a^dag^2)]: rho_lab = S rho_s S^dag, so the
Fock populations of rho_s are exactly the squeezed-Fock populations
<n|S^dag rho_lab S|n> of the lab state.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .model import LAB, SQUEEZED
from .operators import (
    DensityMatrix,
    cavity_destroy,
    destroy,
    displacement_matrix,
    squeeze_matrix,
)

MOMENT_BOUND_SLACK = 1e-8
PROB_TOL = 1e-10
WIGNER_BOUND = 2.0 / np.pi
DEFAULT_N_REPORT = 10


@dataclass(frozen=True)
class MomentSet:
    """Mean photon number and two-photon moment of one frame's mode."""

    mean_photon: float
    second_moment: complex
    frame: str

    def __post_init__(self):
        if self.mean_photon < -PROB_TOL:
            raise ValueError(f"negative mean photon number {self.mean_photon}")
        n = max(self.mean_photon, 0.0)
        bound = np.sqrt(n * (n + 1.0)) + MOMENT_BOUND_SLACK
        if abs(self.second_moment) > bound:
            raise ValueError(
                f"|<a^2>| = {abs(self.second_moment):.6g} violates the "
                f"Cauchy-Schwarz bound {bound:.6g}"
            )

    @property
    def abs_second_moment(self) -> float:
        return abs(self.second_moment)


def moments(rho: DensityMatrix, frame: str) -> MomentSet:
    """<a^dag a> and <a^2> of the computational mode of the given frame."""
    a = destroy(rho.dims).matrix
    n = float(np.real(np.trace(a.conj().T @ a @ rho.matrix)))
    m = complex(np.trace(a @ a @ rho.matrix))
    return MomentSet(mean_photon=max(n, 0.0), second_moment=m, frame=frame)


def lab_moments_from_squeezed(ms: MomentSet, r: float) -> MomentSet:
    """Map squeezed-frame moments to lab-frame moments via the Bogoliubov relations.

    <a^dag a> = sinh^2 r + <a_s^dag a_s> cosh 2r - Re<a_s^2> sinh 2r
    <a^2>     = sinh^2 r <a_s^dag 2> + cosh^2 r <a_s^2>
                - <a_s^dag a_s> sinh 2r - sinh r cosh r
    """
    if ms.frame != SQUEEZED:
        raise ValueError("input moments must be in the squeezed frame")
    sh, ch = np.sinh(r), np.cosh(r)
    n_s, m_s = ms.mean_photon, ms.second_moment
    n_lab = sh**2 + n_s * np.cosh(2 * r) - np.real(m_s) * np.sinh(2 * r)
    m_lab = sh**2 * np.conj(m_s) + ch**2 * m_s - n_s * np.sinh(2 * r) - sh * ch
    return MomentSet(mean_photon=float(max(n_lab, 0.0)), second_moment=complex(m_lab), frame=LAB)


def output_flux(ms: MomentSet, kappa: float) -> float:
    """Steady-state output photon flux kappa <a^dag a> (input-output relation)."""
    if ms.frame != LAB:
        raise ValueError("output flux is defined from lab-frame moments")
    return kappa * ms.mean_photon


# ---------------------------------------------------------------------------
# photon distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhotonDistribution:
    """Populations P_n over bare or squeezed Fock states, n = 0..N_report."""

    basis: str  # "bare" or "squeezed(r=...)"
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.min() < -PROB_TOL:
            raise ValueError(f"negative probability {p.min():.2e}")
        if p.sum() > 1.0 + 1e-8:
            raise ValueError(f"probabilities sum to {p.sum()} > 1")
        object.__setattr__(self, "probs", p)


def photon_distribution(
    rho_lab: DensityMatrix,
    basis: str = "squeezed",
    r: float | None = None,
    n_report: int = DEFAULT_N_REPORT,
) -> PhotonDistribution:
    """Cavity photon distribution of a lab-frame state.

    In the squeezed basis, P_n = <n|S(r)^dag rho_cav S(r)|n>, the population
    of the n-th squeezed Fock state S(r)|n>.
    """
    rho_cav = rho_lab.cavity_state()
    if basis == "bare":
        pops = np.real(np.diag(rho_cav))
        label = "bare"
    elif basis == "squeezed":
        if r is None:
            raise ValueError("squeezed basis requires the squeezing parameter r")
        s = squeeze_matrix(rho_cav.shape[0], r)
        pops = np.real(np.diag(s.conj().T @ rho_cav @ s))
        label = f"squeezed(r={r})"
    else:
        raise ValueError(f"unknown basis {basis!r}")
    if n_report + 1 > pops.size:
        raise TruncationError("n_report exceeds the Fock cutoff")
    return PhotonDistribution(basis=label, probs=pops[: n_report + 1])


def squeezed_frame_distribution(
    rho_s: DensityMatrix, n_report: int = DEFAULT_N_REPORT
) -> PhotonDistribution:
    """Squeezed-Fock distribution read directly off a squeezed-frame solution."""
    pops = rho_s.cavity_populations()
    if n_report + 1 > pops.size:
        raise TruncationError("n_report exceeds the Fock cutoff")
    return PhotonDistribution(basis="squeezed-frame populations", probs=pops[: n_report + 1])


# ---------------------------------------------------------------------------
# squeezed vacuum from the even-photon series
# ---------------------------------------------------------------------------

def squeezed_vacuum_ket(r: float, cavity_dim: int, tail_tol: float = 1e-6) -> np.ndarray:
    """Squeezed-vacuum amplitudes from the even-photon series.

    c_0 = 1/sqrt(cosh r), c_n/c_{n-1} = -tanh(r) sqrt((2n-1)/(2n)) on Fock
    level 2n. Built independently of the squeeze unitary as a dual
    construction check. Raises when the truncated norm deficit exceeds
    ``tail_tol``.
    """
    ket = np.zeros(cavity_dim, dtype=complex)
    th = np.tanh(r)
    c = 1.0 / np.sqrt(np.cosh(r))
    ket[0] = c
    n = 1
    while 2 * n < cavity_dim:
        c = c * (-th) * np.sqrt((2 * n - 1) / (2 * n))
        ket[2 * n] = c
        n += 1
    tail = 1.0 - float(np.sum(np.abs(ket) ** 2))
    if tail > tail_tol:
        raise TruncationError(
            f"squeezed-vacuum series norm deficit {tail:.2e} > {tail_tol} "
            f"at cutoff {cavity_dim - 1}"
        )
    return ket


def squeezed_vacuum_state(r: float, cavity_dim: int) -> np.ndarray:
    """Cavity-factor density matrix of the squeezed vacuum (series form)."""
    ket = squeezed_vacuum_ket(r, cavity_dim)
    return np.outer(ket, ket.conj())


# ---------------------------------------------------------------------------
# Wigner function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WignerGrid:
    """W(x + i p) sampled on a Cartesian phase-space grid."""

    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.x_axis), len(self.p_axis)):
            raise ValueError("values shape does not match axes")
        if v.min() < -WIGNER_BOUND - 1e-9 or v.max() > WIGNER_BOUND + 1e-9:
            raise ValueError("Wigner values outside the [-2/pi, 2/pi] bounds")

    def total(self) -> float:
        """Grid-integrated total; close to 1 when the grid covers the state."""
        inner = np.trapezoid(self.values, self.p_axis, axis=1)
        return float(np.trapezoid(inner, self.x_axis))

    def grid_moments(self) -> tuple[float, float, np.ndarray]:
        """(mean_x, mean_p, 2x2 covariance) of the grid-integrated distribution."""
        xx, pp = np.meshgrid(self.x_axis, self.p_axis, indexing="ij")
        norm = self.total()

        def integrate(f):
            inner = np.trapezoid(f * self.values, self.p_axis, axis=1)
            return float(np.trapezoid(inner, self.x_axis)) / norm

        mx, mp_ = integrate(xx), integrate(pp)
        cov = np.array(
            [
                [integrate((xx - mx) ** 2), integrate((xx - mx) * (pp - mp_))],
                [integrate((xx - mx) * (pp - mp_)), integrate((pp - mp_) ** 2)],
            ]
        )
        return mx, mp_, cov

    def principal_variances(self) -> tuple[float, float]:
        """(major, minor) quadrature variances along the principal axes."""
        _, _, cov = self.grid_moments()
        w = np.linalg.eigvalsh(cov)
        return float(w[1]), float(w[0])


def _wigner_point(rho_cav: np.ndarray, parity: np.ndarray, alpha: complex) -> float:
    d = displacement_matrix(rho_cav.shape[0], alpha)
    # (2/pi) Tr[parity D^dag rho D], parity diagonal
    m = d.conj().T @ rho_cav @ d
    return float((2.0 / np.pi) * np.real(np.sum(parity * np.diag(m))))


def wigner(
    rho_lab: DensityMatrix,
    x_grid: np.ndarray,
    p_grid: np.ndarray,
    pad_to: int | None = None,
    workers: int | None = None,
) -> WignerGrid:
    """Displaced-parity Wigner function of the cavity reduced state.

    W(alpha) = (2/pi) Tr[D(alpha) (-1)^{a^dag a} D^dag(alpha) rho], alpha = x + i p.

    ``pad_to`` embeds the reduced state in a larger cavity space before the
    displacement so far grid points stay inside the truncation margin
    (|alpha|^2 <~ cutoff/4); padding is exact when the state's own cutoff is
    adequate. Grid points violating the margin are reported via a warning.
    """
    rho_cav = rho_lab.cavity_state()
    if pad_to is not None and pad_to > rho_cav.shape[0]:
        padded = np.zeros((pad_to, pad_to), dtype=complex)
        padded[: rho_cav.shape[0], : rho_cav.shape[0]] = rho_cav
        rho_cav = padded
    dim = rho_cav.shape[0]
    parity = (-1.0) ** np.arange(dim)
    x_grid = np.asarray(x_grid, dtype=float)
    p_grid = np.asarray(p_grid, dtype=float)
    alphas = x_grid[:, None] + 1j * p_grid[None, :]
    n_far = int(np.count_nonzero(np.abs(alphas) ** 2 > dim / 4.0))
    if n_far:
        warnings.warn(
            f"{n_far} grid points exceed the truncation margin |alpha|^2 <= "
            f"{dim / 4:.1f}; their Wigner values may be inaccurate",
            UserWarning,
            stacklevel=2,
        )
    flat = alphas.ravel()
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            vals = list(pool.map(lambda al: _wigner_point(rho_cav, parity, al), flat))
    else:
        vals = [_wigner_point(rho_cav, parity, al) for al in flat]
    values = np.array(vals).reshape(alphas.shape)
    return WignerGrid(x_axis=x_grid, p_axis=p_grid, values=values)
