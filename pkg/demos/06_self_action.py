"""Replacing the mass by the wave's own localised energy and momentum.

If the field energy of the wave is confined to a volume dtau, its energy
and momentum can stand in for the mass term. We search for the dtau at
which they do so best and see that the mass term is reproduced exactly.
"""

import numpy as np

from emspinor.field_map import EMField, fields_to_bispinor
from emspinor.nonlinear import (fierz_check, invariant_identity_check, lagrangian_nonlinear_em,
                                lagrangian_nonlinear_quantum, nonlinear_residual,
                                self_consistent_delta_tau, SelfActionParams)
from emspinor.plane_waves import PlaneWaveSpec

s = PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0)
print(f"no self-action: residual = {nonlinear_residual(s, SelfActionParams(0.0)):.3f} (= mc^2)")
for amp in (1.0, 2.0, 4.0):
    sa = self_consistent_delta_tau(s.with_amplitude(amp))
    print(f"amplitude {amp}: dtau = {sa.delta_tau:9.4f}  r_p = {sa.r_p:.4f}  residual = {sa.residual:.1e}")
print("dtau falls as amplitude^-2")

f = EMField([0.4, 0, -1.2], [0.9, 0, 0.5])
lhs, rhs = invariant_identity_check(f)
print(f"\n(E^2+H^2)^2 - 4(ExH)^2 = {lhs:.12f}")
print(f"(E^2-H^2)^2 + 4(E.H)^2 = {rhs:.12f}")
psi = fields_to_bispinor(f)
sa = SelfActionParams(3.0)
q = lagrangian_nonlinear_quantum(psi, sa)
em = lagrangian_nonlinear_em(f, sa, 1.0) - lagrangian_nonlinear_em(f, SelfActionParams(0.0), 1.0)
print(f"quartic term, spinor form / 8 pi m c^2 = {q / (8 * np.pi):.12f}; field form = {em:.12f}")
a, b = fierz_check(psi)
print(f"Fierz with alpha_5: {a:.12f} = {b:.12f}")
a, b = fierz_check(psi, "printed")
print(f"with alpha_3 in its place: {a:.6f} vs {b:.6f}")
