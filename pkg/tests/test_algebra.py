import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emspinor import algebra
from emspinor.algebra import alpha_dot, anticommutator, bilinear, dirac_alpha

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
OFF = np.array([[0, 1], [1, 0]])

# alpha_5 frozen from an independent hand evaluation of alpha1 alpha2 alpha3 beta
ALPHA5 = np.array([[0, 0, -1j, 0],
                   [0, 0, 0, -1j],
                   [1j, 0, 0, 0],
                   [0, 1j, 0, 0]])

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_standard_representation_from_pauli():
    for k, s in zip((1, 2, 3), (SX, SY, SZ)):
        assert np.array_equal(dirac_alpha(k), np.kron(OFF, s))
    assert np.array_equal(dirac_alpha(4), np.kron(SZ, np.eye(2)))
    assert np.array_equal(dirac_alpha(0), np.eye(4))


def test_alpha1_is_antidiagonal_unit():
    assert np.array_equal(dirac_alpha(1), np.fliplr(np.eye(4)))


@pytest.mark.parametrize("i", range(1, 5))
@pytest.mark.parametrize("j", range(1, 5))
def test_anticommutators_exact(i, j):
    ac = anticommutator(dirac_alpha(i), dirac_alpha(j))
    assert np.array_equal(ac, 2 * np.eye(4) * (i == j))


def test_alpha5_matches_frozen_value():
    a5 = dirac_alpha(5)
    assert np.array_equal(a5, ALPHA5)
    assert algebra.ALPHA5_PRODUCT["factors"] == (1, 2, 3, 4)
    prod = dirac_alpha(1) @ dirac_alpha(2) @ dirac_alpha(3) @ dirac_alpha(4)
    assert np.array_equal(a5, algebra.ALPHA5_PRODUCT["phase"] * prod)


def test_alpha5_anticommutes_with_the_other_four():
    for k in range(1, 5):
        assert np.array_equal(anticommutator(dirac_alpha(5), dirac_alpha(k)), np.zeros((4, 4)))
    assert np.array_equal(dirac_alpha(5) @ dirac_alpha(5), np.eye(4))


def test_fierz_candidates_are_plus_minus_alpha5():
    cands = algebra.fierz_candidates(n_samples=200)
    mats = [m for _, _, m in cands]
    assert len(mats) == 2
    assert any(np.array_equal(m, ALPHA5) for m in mats)
    assert any(np.array_equal(m, -ALPHA5) for m in mats)


def test_matrices_read_only():
    with pytest.raises(ValueError):
        dirac_alpha(1)[0, 0] = 5


@pytest.mark.parametrize("bad", [-1, 6, 7])
def test_index_out_of_range(bad):
    with pytest.raises(ValueError):
        dirac_alpha(bad)


@settings(max_examples=200, deadline=None)
@given(st.tuples(finite, finite, finite))
def test_alpha_dot_squares_to_norm(v):
    v = np.array(v)
    m = alpha_dot(v)
    assert np.allclose(m @ m, (v @ v) * np.eye(4), rtol=0, atol=1e-13 * max(v @ v, 1e-300))


def test_alpha_dot_zero_vector():
    assert np.array_equal(alpha_dot([0, 0, 0]), np.zeros((4, 4)))


def test_bilinear_is_real_and_batched():
    rng = np.random.default_rng(1)
    psi = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
    b = bilinear(dirac_alpha(2), psi)
    want = [np.vdot(p, dirac_alpha(2) @ p).real for p in psi]
    assert b.shape == (5,)
    assert np.allclose(b, want, rtol=1e-14)
