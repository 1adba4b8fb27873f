"""Worked input/output examples, one assertion each."""

import numpy as np
import pytest

from emspinor import born_infeld as bi
from emspinor import field_map as fm
from emspinor import massive_em as me
from emspinor import nonlinear as nl
from emspinor.algebra import alpha_dot, anticommutator, bilinear, dirac_alpha
from emspinor.field_map import EMField
from emspinor.plane_waves import PlaneWaveSpec, amplitude_set, dirac_plane_residual, plane_wave

ZERO = EMField([0, 0, 0], [0, 0, 0])


def test_alpha_examples():
    assert np.array_equal(anticommutator(dirac_alpha(1), dirac_alpha(1)), 2 * np.eye(4))
    assert not np.any(anticommutator(dirac_alpha(1), dirac_alpha(2)))
    assert not np.any(anticommutator(dirac_alpha(3), dirac_alpha(4)))
    assert not np.any(alpha_dot([0, 0, 0]))
    assert np.array_equal(alpha_dot([1, 0, 0]), dirac_alpha(1))
    m = alpha_dot([1, 2, 3])
    assert np.array_equal(m @ m, 14 * np.eye(4))


def test_field_map_examples():
    assert np.array_equal(fm.fields_to_bispinor(EMField([1, 0, 0], [0, 0, 0])), [1, 0, 0, 0])
    assert not np.any(fm.fields_to_bispinor(ZERO))
    f = fm.bispinor_to_fields([1, 0, 0, 0])
    assert np.array_equal(f.E, [1, 0, 0]) and not np.any(f.H)


def test_spin1_helicity_eigenvector():
    v = np.array([1, 1j, 0]) / np.sqrt(2)
    assert np.allclose(fm.spin1_matrices()[2] @ v, v, atol=1e-16)


def test_static_uniform_field_has_zero_residual():
    F = np.tile([1 + 2j, 0, 3 - 1j], (16, 1))
    assert fm.maxwell_spin1_residual(F, F, 0.01, 1 / 16) == 0.0


def test_standing_wave_is_a_circle():
    s = PlaneWaveSpec.consistent(1, (0, 0, 0), 1.0)
    t = np.linspace(0, 10, 50)
    psi = plane_wave(s, 0.0, t)
    assert np.allclose(psi, np.exp(-1j * t)[:, None] * amplitude_set(s), atol=1e-15)
    assert np.allclose(np.abs(psi[:, 2]), 1.0, atol=1e-15)


def test_unit_momentum_wave():
    s = PlaneWaveSpec(1, np.sqrt(2), (0, 1, 0), 1.0)
    assert dirac_plane_residual(s) < 1e-12


def test_mass_current_example():
    j = me.mass_currents(EMField([0, 0, 2], [3, 0, 0]), 2 * np.pi)
    assert np.allclose(j.j_e, [0, 0, 1j], atol=1e-16)
    assert np.allclose(j.j_m, [1.5j, 0, 0], atol=1e-16)


def _vacuum(n, t):
    y = np.arange(n) / n
    e = np.cos(2 * np.pi * (y - t))
    z = np.zeros_like(e)
    return np.stack([e, z, z, -1j * e], axis=1)


def test_zero_omega_reduces_to_vacuum_maxwell():
    n = 256
    dy = 1 / n
    r = me.maxwell_mass_residual(_vacuum(n, 0), _vacuum(n, dy / 2), dy / 2, dy, 0.0)
    assert np.max(r) < 1e-3


def test_connection_zero_spinor():
    with pytest.raises(ValueError):
        me.connection_mass_check(np.zeros(4), 1.0, (0, 0, 0), 1.0)


def test_ring_examples():
    rc = me.ring_displacement_current(4 * np.pi, 0.0, 2.5, 2.5)
    assert np.linalg.norm(rc.j_tau) == pytest.approx(1.0, rel=1e-15)
    assert not np.any(rc.j_n)
    rc0 = me.ring_displacement_current(0.0, 1.0, 3.0, 0.2, theta=1.0)
    assert not np.any(rc0.j_tau)


def test_energy_density_examples():
    assert nl.energy_density([1, 0, 0, 0]) == pytest.approx(1 / (8 * np.pi), rel=1e-15)
    f = EMField([1, 0, 0], [0, 0, 1])
    assert nl.energy_density_em(f) == nl.energy_density(fm.fields_to_bispinor(f))
    assert nl.energy_density_em(f) == pytest.approx(1 / (4 * np.pi), rel=1e-15)
    assert nl.energy_density(np.zeros(4)) == 0.0


def test_real_spinor_has_no_alpha2_bilinear():
    psi = np.array([0.3, -1.2, 0.7, 2.0])
    assert bilinear(dirac_alpha(2), psi) == 0.0
    assert not np.any(nl.momentum_density(np.zeros(4)))
    assert not np.any(nl.poynting(ZERO))


def test_zero_spinor_energy_momentum():
    em = nl.photon_energy_momentum(np.zeros(4), nl.SelfActionParams(5.0))
    assert em.eps_p == 0 and not np.any(em.p_p)


def test_zero_amplitude_nonlinear_residual():
    s = PlaneWaveSpec.consistent(1, (0, 1, 0), 1.0, amplitude=0.0)
    with pytest.raises(ValueError):
        nl.nonlinear_residual(s, nl.SelfActionParams(1.0))


def test_lagrangian_zero_examples():
    assert nl.lagrangian_linear(np.zeros(4), 1.0, (0, 1, 0), 1.0) == 0
    assert nl.lagrangian_nonlinear_em(EMField([1, 0, 0], [0, 1, 0]),
                                      nl.SelfActionParams(9.0), 1.0) == 0.0
    assert nl.lagrangian_nonlinear_quantum(np.ones(4), nl.SelfActionParams(0.0)) == 0.0


def test_invariant_examples():
    assert nl.invariant_identity_check(EMField([1, 0, 0], [0, 1, 0])) == (0.0, 0.0)
    assert nl.invariant_identity_check(EMField([1, 0, 0], [2, 0, 0])) == (25.0, 25.0)


def test_fierz_examples():
    assert nl.fierz_check(np.array([1, 0, 0, 0])) == (1.0, 1.0)
    assert nl.fierz_check(np.zeros(4)) == (0.0, 0.0)


def test_born_infeld_zero_fields():
    assert bi.bi_weak_field(ZERO, 1.0) == 0.0
    assert bi.heisenberg_euler(ZERO) == 0.0


def test_born_infeld_ten_r0():
    p = bi.BIParams(1.0, 1.0)
    D, E, eps = bi.bi_radial_fields(10 * p.r0, p)
    assert eps == pytest.approx(np.sqrt(1 + 1e-4), rel=1e-15)
    assert abs(D / E - eps) < 1e-14
