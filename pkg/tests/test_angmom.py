from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ionspin.angmom import Basis, cartesian_j1_operators, spin_operators, tensor_product
from ionspin.units import DomainError


def commutator(a, b):
    return a @ b - b @ a


def check_algebra(ops, tol=1e-12):
    jx, jy, jz = ops.components()
    for m in (jx, jy, jz):
        assert np.allclose(m, m.conj().T, atol=tol, rtol=0)
    assert np.allclose(commutator(jx, jy), 1j * jz, atol=tol, rtol=0)
    assert np.allclose(commutator(jy, jz), 1j * jx, atol=tol, rtol=0)
    assert np.allclose(commutator(jz, jx), 1j * jy, atol=tol, rtol=0)
    j = float(ops.j)
    assert np.allclose(ops.casimir(), j * (j + 1) * np.eye(ops.dim), atol=tol, rtol=0)


def test_spin_half_is_pauli_over_two():
    ops = spin_operators(Fraction(1, 2))
    assert np.allclose(ops.jz, np.diag([0.5, -0.5]))
    assert np.allclose(ops.jx, 0.5 * np.array([[0, 1], [1, 0]]))
    assert np.allclose(ops.jy, 0.5 * np.array([[0, -1j], [1j, 0]]))


def test_spin_one_jz():
    assert np.allclose(spin_operators(1).jz, np.diag([1, 0, -1]))


def test_spin_five_halves_commutator():
    ops = spin_operators(Fraction(5, 2))
    assert ops.dim == 6
    check_algebra(ops)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=16))
def test_algebra_for_any_spin(twice_j):
    check_algebra(spin_operators(Fraction(twice_j, 2)))


@pytest.mark.parametrize("j", [0.3, -1, "a", 1.25])
def test_rejects_non_half_integer(j):
    with pytest.raises(DomainError):
        spin_operators(j)


def test_float_half_integer_accepted():
    assert spin_operators(2.5).dim == 6


def test_cartesian_basis_annihilation():
    ops = cartesian_j1_operators()
    assert ops.basis is Basis.CARTESIAN_XYZ
    for a, m in enumerate(ops.components()):
        e = np.zeros(3)
        e[a] = 1.0
        assert np.allclose(m @ e, 0.0)
    assert ops.jz @ np.array([0, 0, 1.0]) == pytest.approx(np.zeros(3))


def test_cartesian_levi_civita_entries():
    jx = cartesian_j1_operators().jx
    assert jx[1, 2] == -1j
    assert jx[2, 1] == 1j


def test_cartesian_algebra():
    check_algebra(cartesian_j1_operators())


def test_cartesian_equivalent_to_m_basis():
    cart = cartesian_j1_operators()
    std = spin_operators(1)
    for a, b in zip(cart.components(), std.components()):
        assert np.allclose(np.linalg.eigvalsh(a), [-1, 0, 1], atol=1e-12)
        assert np.allclose(np.linalg.eigvalsh(a), np.linalg.eigvalsh(b), atol=1e-12)
    # explicit unitary: |m=+-1> = (-+|X> - i|Y>)/sqrt2, |0> = |Z>
    u = np.column_stack(
        [np.array([-1, -1j, 0]) / np.sqrt(2), np.array([0, 0, 1]), np.array([1, -1j, 0]) / np.sqrt(2)]
    )
    for a, b in zip(cart.components(), std.components()):
        assert np.allclose(u.conj().T @ a @ u, b, atol=1e-12)


def test_tensor_identities():
    assert np.allclose(tensor_product(np.eye(2), np.eye(3)), np.eye(6))
    assert np.allclose(tensor_product(np.diag([1, -1]), np.eye(2)), np.diag([1, 1, -1, -1]))


def test_tensor_rejects_non_square():
    with pytest.raises(DomainError):
        tensor_product(np.ones((2, 3)), np.eye(2))


def _hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_tensor_trace_identity(n, m, seed):
    rng = np.random.default_rng(seed)
    a, b = _hermitian(rng, n), _hermitian(rng, m)
    k = tensor_product(a, b)
    assert k.shape == (n * m, n * m)
    assert np.trace(k) == pytest.approx(np.trace(a) * np.trace(b), rel=1e-10, abs=1e-10)
