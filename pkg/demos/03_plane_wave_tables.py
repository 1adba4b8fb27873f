"""Free-particle amplitude sets, consistent and as printed.

With eps fixed by the dispersion relation the four branch amplitudes solve
the Dirac equation and are orthogonal. The printed standing-wave table uses
eps = +-mc^2 together with p_y = mc; we reproduce it exactly, and measure
how far that pair is from being a solution.
"""

import numpy as np

from emspinor.plane_waves import PlaneWaveSpec, amplitude_set, dirac_plane_residual

print("consistent waves, m = 1, p_y = 0.8:")
amps = []
for b in (1, 2, 3, 4):
    s = PlaneWaveSpec.consistent(b, (0, 0.8, 0), 1.0)
    amps.append(amplitude_set(s, normalize=True))
    print(f"  branch {b}: eps = {s.energy:+.4f}  residual = {dirac_plane_residual(s):.1e}")
gram = np.array([[abs(np.vdot(a, c)) for c in amps] for a in amps])
print("  |<B_i, B_j>| =\n", np.round(gram, 15))

print("\nas printed (eps = +-mc^2, p_y = mc, phase pi/2):")
for b in (1, 2, 3, 4):
    s = PlaneWaveSpec.paper_literal(b)
    print(f"  branch {b}: {amplitude_set(s)}   residual = {dirac_plane_residual(s):.3f}")
print("the consistent energy for p_y = mc would be sqrt(2) mc^2")
