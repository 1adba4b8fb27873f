"""The Dirac matrices, and where the fifth one comes from.

alpha_1..alpha_3 and beta are fixed by the standard representation. A fifth
Hermitian matrix is needed to close a Fierz-type identity between quadratic
bilinears; we find it by brute force over signed products of the other four.
"""

import numpy as np

from emspinor.algebra import ALPHA5_PRODUCT, alpha_dot, anticommutator, dirac_alpha, fierz_candidates

names = {1: "alpha_1", 2: "alpha_2", 3: "alpha_3", 4: "beta"}

print("anticommutators {a_i, a_j} / 2:")
for i in range(1, 5):
    row = [int(anticommutator(dirac_alpha(i), dirac_alpha(j))[0, 0].real) // 2 for j in range(1, 5)]
    print("   ", row)

v = np.array([0.3, -1.2, 2.0])
m = alpha_dot(v)
print(f"\n(alpha.v)^2 = |v|^2 I ?  max deviation {np.max(np.abs(m @ m - (v @ v) * np.eye(4))):.1e}")

print("\nsigned products that close the Fierz identity:")
for factors, phase, _ in fierz_candidates(n_samples=300):
    print(f"    {phase!s:>6} * " + " ".join(names[k] for k in factors))

a5 = dirac_alpha(5)
print(f"\nchosen alpha_5 = {ALPHA5_PRODUCT['phase']} * alpha_1 alpha_2 alpha_3 beta:")
print(a5)
