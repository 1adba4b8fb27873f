import numpy as np
import pytest

from emspinor.field_map import EMField
from emspinor.massive_em import (connection_mass_check, mass_currents, maxwell_mass_residual,
                                 ring_displacement_current, ring_geometry)
from emspinor.plane_waves import PlaneWaveSpec, plane_wave


def test_mass_current_examples():
    j = mass_currents(EMField([1, 0, 0], [0, 0, 0]), 4 * np.pi)
    assert np.allclose(j.j_e, [1j, 0, 0], atol=1e-16)
    assert np.array_equal(j.j_m, [0, 0, 0])
    j0 = mass_currents(EMField([1, 2, 3], [4, 5, 6]), 0.0)
    assert not np.any(j0.j_e) and not np.any(j0.j_m)
    with pytest.raises(ValueError):
        mass_currents(EMField([1, 0, 0], [0, 0, 0]), -1.0)


def _wave(n, t, conj=False):
    y = np.arange(n) / n
    k = 2 * np.pi
    psi = sum(plane_wave(PlaneWaveSpec.consistent(b, (0, k, 0), 1.0), y, t) for b in (1, 2))
    if conj:
        psi = np.stack([psi[:, 0].conj(), psi[:, 1].conj(),
                        -psi[:, 2].conj(), -psi[:, 3].conj()], axis=1)
    return psi


@pytest.mark.parametrize("sign,conj", [("minus", False), ("plus", True)])
def test_all_eight_residuals_second_order(sign, conj):
    res = []
    for n in (128, 256, 512):
        dy = 1.0 / n
        res.append(maxwell_mass_residual(_wave(n, 0, conj), _wave(n, dy / 2, conj),
                                         dy / 2, dy, 1.0, sign))
    res = np.array(res)
    assert res.shape == (3, 8)
    orders = np.log2(res[:-1] / res[1:])
    assert np.all(np.abs(orders - 2) < 0.1), orders


def test_sign_variant_mismatch_is_first_class_error():
    n = 256
    dy = 1.0 / n
    r = maxwell_mass_residual(_wave(n, 0), _wave(n, dy / 2), dy / 2, dy, 1.0, "plus")
    assert np.max(r) > 0.5


def test_connection_closes_on_solution():
    s = PlaneWaveSpec.consistent(1, (0, 0.9, 0), 1.0)
    psi = plane_wave(s, 0.2, 0.0)
    assert connection_mass_check(psi, s.energy, s.p, 1.0) < 1e-14
    assert connection_mass_check(psi, 0.0, (0, 0, 0), 1.0) == pytest.approx(1.0, rel=1e-15)


def test_ring_current_finite_difference_oracle():
    E0, dE, v, r, th = 1.5, -0.4, 0.8, 0.3, 2.1
    rc = ring_displacement_current(E0, dE, v, r, th)

    def e_vec(t):
        n, _ = ring_geometry(th + v / r * t)
        return -(E0 + dE * t) * n

    h = 1e-5
    fd = (e_vec(h) - e_vec(-h)) / (2 * h) / (4 * np.pi)
    assert np.allclose(rc.total, fd, atol=1e-10)
    assert rc.j_n @ rc.j_tau == pytest.approx(0.0, abs=1e-16)


def test_ring_tangential_part_is_mass_current_at_compton_radius():
    rc = ring_displacement_current(2.0, 0.0, 1.0, 1.0)
    mc = mass_currents(EMField([2.0, 0, 0], [0, 0, 0]), 1.0)
    assert np.linalg.norm(rc.j_tau) == pytest.approx(np.linalg.norm(mc.j_e), rel=1e-15)
    assert rc.complex_form.imag == pytest.approx(2.0 / (4 * np.pi))


def test_ring_radius_positive():
    with pytest.raises(ValueError):
        ring_displacement_current(1.0, 0.0, 1.0, 0.0)
