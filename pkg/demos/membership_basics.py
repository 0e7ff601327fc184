"""
Membership in a free spectrahedron
==================================

A linear pencil L_A(X) = I - sum A_j (x) X_j defines a solution set at
every matrix size n: all tuples X of hermitian n x n matrices with
L_A(X) >= 0.  This script evaluates a few pencils at a few points.
"""

import numpy as np

from freespec import MatrixTuple, REAL, free_cube, matrix_ball, membership

square = free_cube(2).pencil    # [-1, 1]^2 and its matrix levels
ball = matrix_ball(2).pencil    # sum X_j^2 <= 1

# level 1: plain points of the plane
for x, y in [(0.0, 0.0), (1.0, 0.3), (1.2, 0.0), (0.6, 0.8)]:
    X = MatrixTuple(np.array([[[x]], [[y]]]), REAL)
    v_sq = membership(square, X)
    v_ball = membership(ball, X)
    print(f"({x:+.1f}, {y:+.1f})  square: {v_sq.status:8s}  ball: {v_ball.status}")

# level 2: a pair of anticommuting reflections sits on the boundary of the
# square at matrix size 2 even though no scalar point does anything similar
sx = np.array([[0.0, 1.0], [1.0, 0.0]])
sz = np.array([[1.0, 0.0], [0.0, -1.0]])
X = MatrixTuple(np.stack([sx, sz]), REAL)
v = membership(square, X)
print(f"\nreflection pair in the square: {v.status}, "
      f"lambda_min = {v.min_eigenvalue:.2e}, kernel dim = {v.kernel_dim}")

# scaling it by 1/sqrt(2) moves it onto the boundary of the ball instead
Xs = MatrixTuple(np.stack([sx, sz]) / np.sqrt(2.0), REAL)
print(f"scaled pair in the ball:       {membership(ball, Xs).status}")

# the verdict also reports how deep inside (or far outside) the point sits
v = membership(ball, MatrixTuple(np.zeros((2, 3, 3)), REAL))
print(f"\norigin at level 3 in the ball: {v.status}, margin {v.min_eigenvalue:.3f}")
