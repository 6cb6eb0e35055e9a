import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negtemp.spin_ops import (
    ManyBodyOperator,
    embed,
    hermitian_eigendecomposition,
    single_spin_operator,
    total_spin_z,
)


def test_single_spin_operators():
    np.testing.assert_array_equal(single_spin_operator("z"), np.diag([0.5, -0.5]))
    np.testing.assert_array_equal(single_spin_operator("y"), 0.5 * np.array([[0, -1j], [1j, 0]]))
    np.testing.assert_array_equal(single_spin_operator("plus"), [[0, 1], [0, 0]])
    np.testing.assert_array_equal(single_spin_operator("minus"), [[0, 0], [1, 0]])
    x, y = single_spin_operator("x"), single_spin_operator("y")
    np.testing.assert_allclose(single_spin_operator("plus"), x + 1j * y)
    with pytest.raises(ValueError):
        single_spin_operator("w")


def test_spin_commutation():
    x, y, z = (single_spin_operator(a) for a in "xyz")
    np.testing.assert_allclose(x @ y - y @ x, 1j * z)


def test_embed_examples():
    z = single_spin_operator("z")
    np.testing.assert_array_equal(embed(z, 1, 1).matrix, np.diag([0.5, -0.5]))
    np.testing.assert_array_equal(embed(z, 2, 2).matrix, np.diag([0.5, -0.5, 0.5, -0.5]))
    np.testing.assert_array_equal(embed(z, 1, 2).matrix, np.diag([0.5, 0.5, -0.5, -0.5]))
    assert embed(z, 3, 5).dim == 32


@pytest.mark.parametrize("site,n", [(0, 3), (4, 3), (-1, 2)])
def test_embed_site_out_of_range(site, n):
    with pytest.raises(ValueError, match="out of range"):
        embed(single_spin_operator("z"), site, n)


def test_embed_cap():
    with pytest.raises(ValueError, match="cap"):
        embed(single_spin_operator("z"), 1, 13)
    with pytest.raises(ValueError, match="cap"):
        embed(single_spin_operator("z"), 1, 5, max_spins=4)


def _random_op(rng):
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_embedded_operators_on_distinct_sites_commute(rng, n):
    for k in range(1, n + 1):
        for m in range(1, n + 1):
            if k == m:
                continue
            a = embed(_random_op(rng), k, n).matrix
            b = embed(_random_op(rng), m, n).matrix
            assert np.max(np.abs(a @ b - b @ a)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), data=st.data())
def test_embed_trace(n, data):
    site = data.draw(st.integers(1, n))
    vals = data.draw(st.lists(st.floats(-5, 5), min_size=4, max_size=4))
    op = np.array(vals[:2] + vals[2:], dtype=complex).reshape(2, 2)
    assert abs(embed(op, site, n).trace() - 2 ** (n - 1) * np.trace(op)) <= 1e-12


def test_embed_iz_traceless():
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert embed(single_spin_operator("z"), k, n).trace() == 0


def test_total_spin_z():
    n = 3
    tz = sum(embed(single_spin_operator("z"), k, n).matrix for k in range(1, n + 1))
    np.testing.assert_array_equal(total_spin_z(n).matrix, tz)


def test_operator_shape_checked():
    with pytest.raises(ValueError):
        ManyBodyOperator(2, np.eye(3))


def test_operator_is_read_only():
    op = ManyBodyOperator(1, np.eye(2))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5


def test_eigendecomposition_diagonal():
    spectrum = hermitian_eigendecomposition(ManyBodyOperator(1, np.diag([1.0, 2.0])))
    np.testing.assert_array_equal(spectrum.eigenvalues, [1, 2])
    np.testing.assert_allclose(np.abs(spectrum.eigenvectors), np.eye(2))


def test_eigendecomposition_two_spin_hamiltonian():
    # 2-spin secular Hamiltonian at alpha = 1, written out by hand
    h = np.array([
        [1.5, 0, 0, 0],
        [0, -0.5, -0.5, 0],
        [0, -0.5, -0.5, 0],
        [0, 0, 0, -0.5],
    ])
    spectrum = hermitian_eigendecomposition(ManyBodyOperator(2, h))
    np.testing.assert_allclose(spectrum.eigenvalues, [-1, -0.5, 0, 1.5], atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_spectrum_invariants_random(rng, n):
    dim = 2**n
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = ManyBodyOperator(n, g + g.conj().T)
    spectrum = hermitian_eigendecomposition(m)
    assert np.all(np.diff(spectrum.eigenvalues) >= 0)
    scale = max(1.0, np.max(np.abs(m.matrix)))
    assert np.max(np.abs(spectrum.reconstruct() - m.matrix)) <= 1e-10 * scale
    v = spectrum.eigenvectors
    assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10


def test_eigendecomposition_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_eigendecomposition(ManyBodyOperator(1, np.array([[0, 1], [0, 0]])))
