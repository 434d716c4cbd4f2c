"""Moments, frame maps, photon distributions, and the Wigner function."""

import warnings

import numpy as np
import pytest

import sqcavity as sq
from sqcavity.observables import (
    MomentSet,
    lab_moments_from_squeezed,
    moments,
    output_flux,
    photon_distribution,
    squeezed_frame_distribution,
    squeezed_vacuum_ket,
    wigner,
)
from sqcavity.operators import squeeze_matrix


def _pure_cavity_state(dims, cavity_ket):
    ket = np.zeros(dims.total_dim, dtype=complex)
    ket[: dims.cavity_dim] = cavity_ket  # atom in ground state
    return sq.DensityMatrix.from_ket(dims, ket)


def test_fock_state_moments():
    dims = sq.HilbertDims(8)
    rho = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 0, 3))
    ms = moments(rho, sq.LAB)
    assert ms.mean_photon == pytest.approx(3.0)
    assert ms.abs_second_moment == pytest.approx(0.0, abs=1e-14)


def test_moment_map_of_squeezed_frame_vacuum():
    # squeezed-frame vacuum is the lab squeezed vacuum:
    # n_lab = sinh^2 r, m_lab = -sinh r cosh r (frozen values at r = 1)
    ms = MomentSet(mean_photon=0.0, second_moment=0.0, frame=sq.SQUEEZED)
    lab = lab_moments_from_squeezed(ms, 1.0)
    assert lab.mean_photon == pytest.approx(1.3810978455418155, abs=1e-13)
    assert lab.second_moment.real == pytest.approx(-1.8134302039235093, abs=1e-13)
    assert lab.second_moment.imag == pytest.approx(0.0, abs=1e-13)


def test_moment_map_matches_explicit_conjugation():
    rng = np.random.default_rng(3)
    dims = sq.HilbertDims(59)
    r = 0.4
    # random low-excitation cavity state
    ket = np.zeros(dims.cavity_dim, dtype=complex)
    ket[:4] = rng.normal(size=4) + 1j * rng.normal(size=4)
    ket /= np.linalg.norm(ket)
    rho_s = _pure_cavity_state(dims, ket)
    mapped = lab_moments_from_squeezed(moments(rho_s, sq.SQUEEZED), r)
    # conjugate the state instead: rho_lab = S rho_s S^dag
    s = squeeze_matrix(dims.cavity_dim, r)
    cav_lab = s @ rho_s.cavity_state() @ s.conj().T
    rho_lab = sq.DensityMatrix.from_matrix(
        dims, np.kron(np.diag([1.0, 0.0]), cav_lab), check=False
    )
    direct = moments(rho_lab, sq.LAB)
    assert mapped.mean_photon == pytest.approx(direct.mean_photon, abs=1e-8)
    assert abs(mapped.second_moment - direct.second_moment) < 1e-8


def test_output_flux_frame_guard():
    ms = MomentSet(mean_photon=2.0, second_moment=0.0, frame=sq.LAB)
    assert output_flux(ms, 0.5) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        output_flux(MomentSet(1.0, 0.0, sq.SQUEEZED), 0.5)


def test_squeezed_vacuum_series():
    # frozen values at r = 1: P0 = 1/cosh(1), P2 = tanh^2(1)/(2 cosh(1))
    ket = squeezed_vacuum_ket(1.0, 101)
    assert abs(ket[0]) ** 2 == pytest.approx(0.6480542736638855, abs=1e-14)
    assert abs(ket[2]) ** 2 == pytest.approx(0.1879440533758696, abs=1e-14)
    assert np.abs(ket[1::2]).max() == 0.0
    # dual construction: the series ket equals S(r)|0>
    s = squeeze_matrix(101, 1.0)
    assert np.abs(ket[:61] - s[:61, 0]).max() < 1e-10
    with pytest.raises(sq.TruncationError):
        squeezed_vacuum_ket(2.0, 11)


def test_photon_distribution_of_squeezed_vacuum():
    dims = sq.HilbertDims(100)
    ket = squeezed_vacuum_ket(0.9, dims.cavity_dim)
    rho = _pure_cavity_state(dims, ket)
    bare = photon_distribution(rho, basis="bare")
    assert bare.probs[0] == pytest.approx(1.0 / np.cosh(0.9), abs=1e-12)
    assert bare.probs[1] == pytest.approx(0.0, abs=1e-14)
    # in its own squeezed basis the state is the n = 0 squeezed Fock state
    sqz = photon_distribution(rho, basis="squeezed", r=0.9)
    assert sqz.probs[0] == pytest.approx(1.0, abs=1e-8)
    assert sqz.probs[1:].max() < 1e-8


def test_squeezed_frame_distribution_reads_populations():
    dims = sq.HilbertDims(12)
    rho = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 0, 4))
    dist = squeezed_frame_distribution(rho, n_report=6)
    assert dist.probs[4] == pytest.approx(1.0)
    with pytest.raises(sq.TruncationError):
        squeezed_frame_distribution(rho, n_report=20)


def test_wigner_of_vacuum_is_gaussian():
    dims = sq.HilbertDims(20)
    rho = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 0, 0))
    ax = np.linspace(-3.0, 3.0, 31)
    grid = wigner(rho, ax, ax, pad_to=100)
    ref = (2.0 / np.pi) * np.exp(-2.0 * (ax[:, None] ** 2 + ax[None, :] ** 2))
    assert np.abs(grid.values - ref).max() < 1e-10
    assert grid.total() == pytest.approx(1.0, abs=1e-3)
    var_maj, var_min = grid.principal_variances()
    assert var_maj == pytest.approx(0.25, abs=5e-3)
    assert var_min == pytest.approx(0.25, abs=5e-3)


def test_wigner_of_squeezed_vacuum_variances():
    r = 0.7
    dims = sq.HilbertDims(60)
    ket = squeezed_vacuum_ket(r, dims.cavity_dim)
    rho = _pure_cavity_state(dims, ket)
    ax = np.linspace(-4.0, 4.0, 41)
    grid = wigner(rho, ax, ax, pad_to=140)
    var_maj, var_min = grid.principal_variances()
    assert var_maj == pytest.approx(0.25 * np.exp(2 * r), rel=0.02)
    assert var_min == pytest.approx(0.25 * np.exp(-2 * r), rel=0.02)
    assert grid.total() == pytest.approx(1.0, abs=1e-2)


def test_wigner_truncation_margin_warning():
    dims = sq.HilbertDims(8)
    rho = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 0, 0))
    ax = np.linspace(-4.0, 4.0, 9)
    with pytest.warns(UserWarning):
        wigner(rho, ax, ax)
