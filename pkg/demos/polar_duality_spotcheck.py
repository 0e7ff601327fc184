"""Polar duality between a spectrahedron and the hull of its coefficients.

For bounded sets the pairing is clean: Y belongs to the polar dual of
D_A exactly when L_X(Y) >= 0 for every X in D_A, and that dual is the
matrix convex hull of the coefficient tuple A itself.  Here we sample
the quantifier instead of proving it: draw members X at several levels
and confirm the inequality for hull points Y built as compressions.
"""

import numpy as np

from freespec import (
    LinearPencil,
    MatrixTuple,
    REAL,
    free_cube,
    polar_dual_check,
    random_point,
    rng_from,
)
from freespec.pencil import evaluate_L

rng = rng_from(42)
P = free_cube(2).pencil
A = P.A

# the coefficient tuple itself is the first hull point worth checking
ok, worst = polar_dual_check(P, A, samples=200, seed=1)
print(f"coefficients against 200 sampled members: ok={ok}, "
      f"worst eigenvalue {worst:+.2e}")

# genuine compressions: V* (I_r (x) A) V for random isometries V
for r, ny in [(1, 1), (1, 2), (2, 2), (2, 3)]:
    V, _ = np.linalg.qr(rng.normal(size=(r * A.n, ny)))
    Y = MatrixTuple(
        np.stack([V.T @ np.kron(np.eye(r), Aj) @ V for Aj in A.entries.real]), REAL
    )
    ok, worst = polar_dual_check(P, Y, samples=100, seed=r * 10 + ny)
    print(f"compression r={r} -> level {ny}: ok={ok}, worst {worst:+.2e}")

# and the raw inequality for one concrete pair, shown directly
X = random_point(rng, P, 3, where="boundary")
lam = float(np.linalg.eigvalsh(evaluate_L(LinearPencil(A), X))[0])
print(f"\nsingle pair by hand: lambda_min(L_A(X)) = {lam:+.3e} for a "
      f"level-3 boundary member X")
