import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emspinor import nonlinear as nl
from emspinor.field_map import EMField, fields_to_bispinor
from emspinor.plane_waves import PlaneWaveSpec, amplitude_set

real = st.floats(-1e3, 1e3, allow_nan=False)


@settings(max_examples=300)
@given(real, real, real, real)
def test_energy_density_forms_agree_exactly(ex, ez, hx, hz):
    f = EMField([ex, 0, ez], [hx, 0, hz])
    assert nl.energy_density(fields_to_bispinor(f)) == nl.energy_density_em(f)


@settings(max_examples=300)
@given(real, real, real, real)
def test_momentum_density_is_poynting(ex, ez, hx, hz):
    f = EMField([ex, 0, ez], [hx, 0, hz])
    assert np.array_equal(nl.momentum_density(fields_to_bispinor(f)), nl.poynting(f))


def test_photon_energy_momentum_example():
    em = nl.photon_energy_momentum([1, 0, 0, 1j], nl.SelfActionParams(8 * np.pi))
    assert em.eps_p == pytest.approx(2.0, rel=1e-15)
    assert np.allclose(em.p_p, [0, -2, 0], atol=1e-15)


def test_free_residual_is_rest_energy():
    s = PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0)
    assert nl.nonlinear_residual(s, nl.SelfActionParams(0.0)) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("py", [0.0, 0.7, 1.0, 3.0])
def test_self_consistent_volume_closed_form(py):
    # |a - dtau b|^2 is minimised at dtau = 8 pi m c^2 / (1 - s^2), s = c p / (eps + m c^2)
    s = PlaneWaveSpec.consistent(1, (0, py, 0), 1.0)
    ratio = py / (s.energy + 1.0)
    sa = nl.self_consistent_delta_tau(s)
    assert sa.delta_tau == pytest.approx(8 * np.pi / (1 - ratio**2), rel=1e-12)
    assert sa.residual < 1e-10


def test_frozen_volume_at_unit_momentum():
    sa = nl.self_consistent_delta_tau(PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0))
    assert sa.delta_tau == pytest.approx(4 * np.pi * (np.sqrt(2) + 1), rel=1e-12)
    assert sa.r_p == pytest.approx(np.cbrt(sa.delta_tau * 3 / (4 * np.pi)), rel=1e-15)


def test_volume_scales_as_inverse_square_amplitude():
    s = PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0)
    amps = np.array([1.0, 2.0, 4.0])
    dt = [nl.self_consistent_delta_tau(s.with_amplitude(a)).delta_tau for a in amps]
    slope = np.polyfit(np.log(amps), np.log(dt), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.02)


def test_self_consistent_needs_mass():
    with pytest.raises(ValueError):
        nl.self_consistent_delta_tau(PlaneWaveSpec(1, 1.0, (0, 1.0, 0), 0.0))


def test_negative_volume_rejected():
    with pytest.raises(ValueError):
        nl.SelfActionParams(-1.0)


def test_linear_lagrangian_vanishes_on_solutions():
    s = PlaneWaveSpec.consistent(2, (0, -1.4, 0), 1.0)
    assert abs(nl.lagrangian_linear(amplitude_set(s), s.energy, s.p, 1.0)) < 1e-14


def test_linear_lagrangian_em_form():
    f = EMField([2.0, 0, 0], [1.0, 0, 0])
    val = nl.lagrangian_linear_em(f, 0.5, -0.5, 8 * np.pi)
    assert val == pytest.approx(-3j, rel=1e-15)


def test_nonlinear_em_example():
    sa = nl.SelfActionParams((8 * np.pi) ** 2)
    val = nl.lagrangian_nonlinear_em(EMField([1, 0, 0], [0, 0, 0]), sa, 1.0)
    assert val == pytest.approx(1 / (8 * np.pi) + 1, rel=1e-15)


@settings(max_examples=300)
@given(st.lists(st.floats(-1e2, 1e2, allow_nan=False), min_size=6, max_size=6))
def test_invariant_identity(v):
    lhs, rhs = nl.invariant_identity_check(EMField(v[:3], v[3:]))
    scale = max(sum(x * x for x in v) ** 2, 1e-300)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_fierz_with_alpha5_and_printed_variant():
    rng = np.random.default_rng(9)
    psi = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    n2 = np.sum(np.abs(psi) ** 2, axis=1) ** 2
    lhs, rhs = nl.fierz_check(psi)
    assert np.max(np.abs(lhs - rhs) / n2) < 1e-12
    lhs, rhs = nl.fierz_check(psi, "printed")
    assert np.max(np.abs(lhs - rhs) / n2) > 0.1


def test_quartic_bases_agree_and_match_em_form():
    sa = nl.SelfActionParams(3.0)
    f = EMField([0.4, 0, -1.2], [0.9, 0, 0.3])
    psi = fields_to_bispinor(f)
    a = nl.lagrangian_nonlinear_quantum(psi, sa, "alpha")
    b = nl.lagrangian_nonlinear_quantum(psi, sa, "fierz")
    assert a == pytest.approx(b, rel=1e-13)
    em = (nl.lagrangian_nonlinear_em(f, sa, 1.0)
          - nl.lagrangian_nonlinear_em(f, nl.SelfActionParams(0.0), 1.0))
    assert a / (8 * np.pi) == pytest.approx(em, rel=1e-12)


def test_general_lagrangian_sign_variant_is_distinct():
    s = PlaneWaveSpec.consistent(1, (0, 0.7, 0), 1.0)
    psi = amplitude_set(s)
    sa = nl.self_consistent_delta_tau(s)
    assert abs(nl.lagrangian_nonlinear_general(psi, s.energy, s.p, sa)) > 1.0
