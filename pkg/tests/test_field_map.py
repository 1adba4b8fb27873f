import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emspinor.field_map import (EMField, bispinor_to_fields, cramers, cramers_from_bispinor,
                                fields_to_bispinor, maxwell_spin1_residual, spatial_derivative,
                                spin1_matrices)

comp = st.floats(-1e6, 1e6, allow_nan=False)


def test_spec_example_forward():
    psi = fields_to_bispinor(EMField([0, 0, 2], [3, 0, 0]))
    assert np.array_equal(psi, [0, 2, 3j, 0])


def test_spec_example_backward():
    f = bispinor_to_fields([0, 0, 1j, 0])
    assert np.array_equal(f.E, [0, 0, 0])
    assert np.array_equal(f.H, [1, 0, 0])


def test_strict_rejects_longitudinal_components():
    with pytest.raises(ValueError):
        fields_to_bispinor(EMField([0, 1, 0], [0, 0, 0]), strict=True)


@settings(max_examples=200)
@given(st.tuples(comp, comp, comp, comp))
def test_round_trip_is_exact(v):
    ex, ez, hx, hz = v
    f = EMField([ex, 0, ez], [hx, 0, hz])
    g = bispinor_to_fields(fields_to_bispinor(f))
    assert np.array_equal(g.E, f.E) and np.array_equal(g.H, f.H)


def test_cramers_components_from_bispinor():
    f = EMField([1.0, 0, 2.0], [3.0, 0, 4.0])
    F, Fstar = cramers(f)
    assert np.array_equal(F, [1 + 3j, 0, 2 + 4j])
    assert np.array_equal(Fstar, [1 - 3j, 0, 2 - 4j])
    assert np.array_equal(cramers_from_bispinor(fields_to_bispinor(f)), F)


def test_spin1_algebra():
    S = spin1_matrices()
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        assert np.allclose(S[a] @ S[b] - S[b] @ S[a], 1j * S[c], atol=0)
    assert np.allclose(sum(s @ s for s in S), 2 * np.eye(3), atol=0)


def test_spin1_generates_curl():
    # for F = F0 exp(i k y): curl F = i k (y_hat x F0), p = hbar k y_hat
    rng = np.random.default_rng(4)
    F0 = rng.normal(size=3) + 1j * rng.normal(size=3)
    k = 1.7
    S = spin1_matrices()
    assert np.allclose(k * S[1] @ F0, 1j * k * np.cross([0, 1, 0], F0), rtol=1e-15)


def test_spatial_derivative_of_sine():
    n = 64
    dy = 2 * np.pi / n
    y = np.arange(n) * dy
    d = spatial_derivative(np.sin(y), dy)
    assert np.allclose(d, np.cos(y) * np.sin(dy) / dy, atol=1e-14)


def _vacuum(n, t, sign=-1.0):
    y = np.arange(n) / n
    f = np.cos(2 * np.pi * (y - t))
    z = np.zeros_like(f)
    return cramers_from_bispinor(np.stack([f, z, z, sign * 1j * f], axis=1))


@pytest.mark.parametrize("stencil,order", [("centered", 2.0), ("forward", 1.0)])
def test_spin1_residual_order(stencil, order):
    errs = []
    for n in (128, 256, 512):
        dy = 1.0 / n
        errs.append(maxwell_spin1_residual(_vacuum(n, 0), _vacuum(n, dy / 2), dy / 2, dy,
                                           stencil=stencil))
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    assert np.all(np.abs(orders - order) < 0.1)


def test_wrong_polarisation_is_not_a_solution():
    n = 256
    dy = 1.0 / n
    r = maxwell_spin1_residual(_vacuum(n, 0, 1.0), _vacuum(n, dy / 2, 1.0), dy / 2, dy)
    assert r > 1.0


def test_residual_needs_three_points():
    F = np.zeros((2, 3), complex)
    with pytest.raises(ValueError):
        maxwell_spin1_residual(F, F, 0.1, 0.1)
