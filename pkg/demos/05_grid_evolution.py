"""Time-stepping the 1+1D Dirac equation and measuring its dispersion.

The integrator is a unitary split step, so the norm is conserved to
round-off while the phase error falls as the square of the grid spacing.
"""

import numpy as np

from emspinor.evolution import evolve, measure_dispersion, plane_wave_grid
from emspinor.plane_waves import PlaneWaveSpec

spec = PlaneWaveSpec.consistent(1, (0, 2 * np.pi, 0), 1.0)
period = 2 * np.pi / spec.energy
print("    N   error after one period   norm drift")
for n in (64, 128, 256, 512):
    g = plane_wave_grid(spec, n, 1.0)
    steps = int(np.ceil(period / (g.dy / 2)))
    g1 = evolve(g, 1.0, period / steps, steps)
    err = np.max(np.abs(g1.values - g.values))
    print(f"{n:5d}   {err:.3e}                {abs(g1.norm() / g.norm() - 1):.1e}")

print("\nmeasured omega against sqrt(k^2 + m^2), N = 512:")
for m, k in ((1.0, 0.0), (1.0, 1.0), (0.0, 2 * np.pi)):
    w = measure_dispersion(m, k, 512)
    print(f"  m = {m:g}, k = {k:.4f}: omega = {w:.6f}  expected {np.hypot(m, k):.6f}")
