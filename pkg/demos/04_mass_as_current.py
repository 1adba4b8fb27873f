"""The mass term as an imaginary current, and the ring that produces it.

Mapped to fields, a massive Dirac wave obeys Maxwell's equations with
sources (i w / 4 pi) E and (i w / 4 pi) H. A field carried round a circle of
radius r_p at speed v_p has a tangential displacement current of exactly
that size when v_p / r_p = w.
"""

import numpy as np

from emspinor.field_map import EMField
from emspinor.massive_em import mass_currents, maxwell_mass_residual, ring_displacement_current
from emspinor.plane_waves import PlaneWaveSpec, plane_wave


def wave(n, t):
    y = np.arange(n) / n
    return sum(plane_wave(PlaneWaveSpec.consistent(b, (0, 2 * np.pi, 0)), y, t) for b in (1, 2))


print("    N   max of the 8 residuals (Re and Im of 4 equations)")
for n in (64, 128, 256, 512):
    dy = 1 / n
    r = maxwell_mass_residual(wave(n, 0), wave(n, dy / 2), dy / 2, dy, 1.0, "minus")
    print(f"{n:5d}   {r.max():.3e}")

E = 1.0
ring = ring_displacement_current(E, 0.0, v_p=1.0, r_p=1.0)
jm = mass_currents(EMField([E, 0, 0], [0, 0, 0]), omega=1.0)
print(f"\nring at r_p = hbar/mc, v_p = c: |j_tau| = {np.linalg.norm(ring.j_tau):.6f}")
print(f"mass current (w/4pi)|E|:       |j_e|   = {np.linalg.norm(jm.j_e):.6f}")
