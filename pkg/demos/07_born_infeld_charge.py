"""The Born-Infeld point charge: finite field at the centre.

Writes the radial profile to born_infeld_profile.csv next to this script and
prints a few landmarks.
"""

from pathlib import Path

import numpy as np

from emspinor.born_infeld import BIParams, bi_lagrangian, bi_radial_fields, bi_weak_field, write_profile_csv
from emspinor.field_map import EMField

p = BIParams(e=1.0, E0=1.0)
for x in (0.01, 0.1, 1.0, 10.0):
    D, E, eps = bi_radial_fields(x * p.r0, p)
    print(f"r = {x:5.2f} r0:  D = {D:12.4f}  E = {E:.6f}  D/E = {eps:.6f}")

out = Path(__file__).with_name("born_infeld_profile.csv")
write_profile_csv(out, p, np.geomspace(1e-2, 1e2, 101))
print(f"profile written to {out.name}")

f = EMField([0.05, 0, 0], [0, 0, 0])
full, weak = bi_lagrangian(f, 1.0), bi_weak_field(f, 1.0)
print(f"\nweak field aE = 0.05: full {full:.12e}, expansion {weak:.12e}, rel diff {abs(full - weak) / abs(full):.1e}")
