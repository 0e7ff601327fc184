# Two explicit dilation constructions.
#
# 1. Reflection dilations: any cube point dilates to a tuple of
#    selfadjoint unitaries one level up, by pairing each X_j with the
#    defect sqrt(I - X_j^2).  These dilations are exactly the free
#    extreme points of the cube when irreducible.
#
# 2. Row contractions: a strict row contraction (T, X_1, ..., X_g)
#    dilates to a coisometric row (S, Y_1, ..., Y_g) with the Y_j
#    hermitian, doubling the size, with the original recovered in the
#    upper-left corner.

import numpy as np

from freespec import (
    COMPLEX,
    MatrixTuple,
    REAL,
    classify,
    free_cube,
    halmos_dilation,
    m1g_maximal_dilation,
)

# --- reflections ------------------------------------------------------
X = MatrixTuple(np.array([[[0.3]], [[-0.7]]]), REAL)
H = halmos_dilation(X)
print("reflection dilation of (0.3, -0.7):")
for j, M in enumerate(H.entries):
    print(f"  X{j+1}^2 - I: {np.linalg.norm(M @ M - np.eye(2)):.1e}", end="")
    print(f"   corner: {float(np.real(M[0, 0])):+.2f}")
rep = classify(free_cube(2).pencil, H)
print(f"  free extreme in the square: {rep.free}")

# --- row contractions -------------------------------------------------
rng = np.random.default_rng(3)
d, g = 2, 2
T = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
Xs = np.stack([(B + B.conj().T) / 2 for B in rng.normal(size=(g, d, d))]).astype(complex)
R = T @ T.conj().T + np.einsum("jab,jbc->ac", Xs, Xs)
scale = 0.75 / np.sqrt(float(np.linalg.eigvalsh(R)[-1]))
T, Xs = scale * T, scale * Xs

S, Y = m1g_maximal_dilation(T, MatrixTuple(Xs, COMPLEX))
row = S @ S.conj().T + np.einsum("jab,jbc->ac", Y.entries, Y.entries)
print(f"\nrow contraction d={d}, g={g}:")
print(f"  coisometry defect |SS* + sum Y^2 - I| = {np.linalg.norm(row - np.eye(2 * d)):.1e}")
print(f"  S invertible: sigma_min = {np.linalg.svd(S, compute_uv=False)[-1]:.3f}")
print(f"  corner of S recovers T: {np.linalg.norm(S[:d, :d] - T):.1e}")
print(f"  corner of Y recovers X: "
      f"{max(np.linalg.norm(Y.entries[j][:d, :d] - Xs[j]) for j in range(g)):.1e}")
