"""Operator factories, vectorization, and density-matrix validation."""

import math

import numpy as np
import pytest

import sqcavity as sq
from sqcavity.operators import (
    cavity_destroy,
    displacement_matrix,
    squeeze_matrix,
)

RNG = np.random.default_rng(7)


def random_density(d):
    m = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def test_index_convention():
    dims = sq.HilbertDims(4)
    assert dims.cavity_dim == 5
    assert dims.total_dim == 10
    assert dims.index(0, 0) == 0
    assert dims.index(0, 4) == 4
    assert dims.index(1, 0) == 5
    with pytest.raises(sq.DimensionMismatchError):
        dims.index(0, 5)


def test_destroy_matrix_elements():
    a = cavity_destroy(6)
    for n in range(1, 6):
        assert a[n - 1, n] == pytest.approx(np.sqrt(n))
    # [a, a^dag] = 1 away from the truncation corner
    comm = a @ a.conj().T - a.conj().T @ a
    assert np.abs(comm[:4, :4] - np.eye(4)).max() < 1e-14


def test_composite_operators_commute_across_factors():
    dims = sq.HilbertDims(5)
    a = sq.destroy(dims)
    see, seg, sge = sq.atom_ops(dims)
    assert np.abs(a.matrix @ see.matrix - see.matrix @ a.matrix).max() == 0.0
    assert (seg.dag().matrix == sge.matrix).all()


def test_squeeze_is_unitary_and_inverse_at_negated_r():
    s = squeeze_matrix(40, 0.7)
    k = 26
    assert np.abs((s.conj().T @ s - np.eye(40))[:k, :k]).max() < 1e-10
    s_inv = squeeze_matrix(40, -0.7)
    assert np.abs((s @ s_inv - np.eye(40))[:k, :k]).max() < 1e-8


def test_squeeze_bogoliubov_relation():
    # S a S^dag = cosh(r) a + sinh(r) a^dag, checked on a padded block
    r, dim, block = 0.6, 200, 20
    a = cavity_destroy(dim)
    s = squeeze_matrix(dim, r)
    lhs = s @ a @ s.conj().T
    rhs = np.cosh(r) * a + np.sinh(r) * a.conj().T
    assert np.abs((lhs - rhs)[:block, :block]).max() < 1e-10


def test_displacement_gives_coherent_state():
    alpha = 0.8 - 0.3j
    d = displacement_matrix(40, alpha)
    ket = d[:, 0]
    n = np.arange(40)
    expected = np.exp(-0.5 * abs(alpha) ** 2) * alpha**n / np.sqrt(
        [float(math.factorial(int(k))) for k in n]
    )
    assert np.abs(ket - expected).max() < 1e-10


def test_vectorize_roundtrip_and_kron_identity():
    d = 6
    rho = random_density(d)
    assert np.abs(sq.unvectorize(sq.vectorize(rho)) - rho).max() == 0.0
    a = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    b = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    lhs = np.kron(b.T, a) @ sq.vectorize(rho)
    assert np.abs(lhs - sq.vectorize(a @ rho @ b)).max() < 1e-12


def test_operator_matrix_is_immutable():
    dims = sq.HilbertDims(3)
    a = sq.destroy(dims)
    with pytest.raises(ValueError):
        a.matrix[0, 0] = 1.0


def test_density_matrix_validation():
    dims = sq.HilbertDims(2)
    d = dims.total_dim
    good = np.eye(d) / d
    sq.DensityMatrix.from_matrix(dims, good)
    with pytest.raises(ValueError):
        bad = good.copy().astype(complex)
        bad[0, 1] = 0.5
        sq.DensityMatrix.from_matrix(dims, bad)
    with pytest.raises(ValueError):
        sq.DensityMatrix.from_matrix(dims, 2.0 * good)
    with pytest.raises(ValueError):
        indef = good.copy()
        indef[0, 0] = -0.1
        indef[1, 1] = good[1, 1] + good[0, 0] + 0.1
        sq.DensityMatrix.from_matrix(dims, indef)


def test_partial_trace_of_product_state():
    dims = sq.HilbertDims(3)
    atom = np.array([[0.25, 0.1], [0.1, 0.75]], dtype=complex)
    cav = random_density(dims.cavity_dim)
    rho = sq.DensityMatrix.from_matrix(dims, np.kron(atom, cav), check=False)
    assert np.abs(rho.cavity_state() - cav).max() < 1e-14
    assert np.abs(rho.cavity_populations() - np.real(np.diag(cav))).max() < 1e-14


def test_basis_ket_and_from_ket():
    dims = sq.HilbertDims(3)
    ket = sq.basis_ket(dims, 1, 2)
    rho = sq.DensityMatrix.from_ket(dims, ket)
    assert rho.matrix[dims.index(1, 2), dims.index(1, 2)] == pytest.approx(1.0)
    assert np.trace(rho.matrix) == pytest.approx(1.0)
