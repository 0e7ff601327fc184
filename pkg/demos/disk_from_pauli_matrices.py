# The matrix convex hull of the reflection pair is the unit disk.
#
# mconv(A) collects all compressions V* (I_r (x) A) V over isometries V.
# For A = (s_x, s_z) the level-1 slice of the hull fills the closed unit
# disk -- every unit vector direction is attained, nothing more.

import numpy as np

from freespec import MatrixTuple, REAL, mconv_membership, pauli_pair

A = pauli_pair()

print("radius sweep along a fixed direction:")
d = np.array([np.cos(0.9), np.sin(0.9)])
for r in (0.0, 0.5, 0.9, 0.999, 1.0, 1.001, 1.2):
    Y = MatrixTuple(np.array([[[r * d[0]]], [[r * d[1]]]]), REAL)
    ok, margin = mconv_membership(A, Y)
    print(f"  r = {r:6.3f}   member = {str(ok):5s}   margin = {margin:+.2e}")

# a crude bitmap of the level-1 slice
print("\nlevel-1 slice of mconv(s_x, s_z):")
for y in np.linspace(1.0, -1.0, 11):
    row = ""
    for x in np.linspace(-1.2, 1.2, 25):
        Y = MatrixTuple(np.array([[[x]], [[y]]]), REAL)
        row += "#" if mconv_membership(A, Y)[0] else "."
    print("  " + row)

# at level 2 the hull contains the pair itself and every rotation of it
th = 0.4
U = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
rotated = MatrixTuple(np.stack([U.T @ M @ U for M in A.entries]), REAL)
print(f"\nrotated pair member at level 2: {mconv_membership(A, rotated)[0]}")
