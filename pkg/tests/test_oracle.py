"""Self-consistency of the independent reference implementations."""

import numpy as np
import pytest

import sqcavity as sq
from sqcavity.oracle import empty_cavity_steady_moments, small_system_brute_force


def test_closed_form_photon_number():
    # n = 2 Omega^2 / (kappa^2 + 4 Delta^2 - 4 Omega^2), from the 3x3 system
    for delta, omega, kappa in [(1.0, 0.3, 1.0), (0.5, 0.2, 1.0), (2.0, 1.1, 0.7)]:
        mom = empty_cavity_steady_moments(delta, omega, kappa)
        n_ref = 2.0 * omega**2 / (kappa**2 + 4.0 * delta**2 - 4.0 * omega**2)
        assert mom.n == pytest.approx(n_ref, abs=1e-14)


def test_moment_symmetries():
    mom = empty_cavity_steady_moments(1.0, 0.4, 1.0)
    assert mom.n > 0
    # for theta_p = 0 the two-photon moment has negative real part
    assert mom.m.real < 0


def test_instability_raises():
    # kappa^2 + 4 Delta^2 - 4 Omega^2 < 0: parametric oscillation threshold
    with pytest.raises(sq.ThresholdError):
        empty_cavity_steady_moments(0.0, 0.6, 1.0)


def test_brute_force_dimension_guard():
    dims = sq.HilbertDims(4)  # total_dim 10 > 8
    p = sq.ModelParams.for_squeezing(1.0, 0.0, g0=0.0, gamma=0.5, frame=sq.LAB)
    h = sq.build_hamiltonian_lab(p, dims)
    diss = sq.build_dissipators(p, dims)
    rho0 = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 0, 0))
    with pytest.raises(sq.DimensionMismatchError):
        small_system_brute_force(h, diss, rho0, 1.0)


def test_brute_force_decay_of_excited_atom():
    # analytic check: excited-state population decays as exp(-gamma t)
    dims = sq.HilbertDims(2)
    gamma = 0.8
    p = sq.ModelParams.for_squeezing(1.0, 0.0, g0=0.0, gamma=gamma, frame=sq.LAB)
    h = sq.build_hamiltonian_lab(p, dims)
    diss = sq.build_dissipators(p, dims)
    rho0 = sq.DensityMatrix.from_ket(dims, sq.basis_ket(dims, 1, 0))
    for t in (0.5, 2.0):
        rho_t = small_system_brute_force(h, diss, rho0, t)
        pop = np.real(rho_t.matrix[dims.index(1, 0), dims.index(1, 0)])
        assert pop == pytest.approx(np.exp(-gamma * t), abs=1e-12)
