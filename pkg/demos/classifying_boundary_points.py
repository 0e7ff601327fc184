# Classifying boundary points: classical, matrix and free extreme.
#
# The three notions form a hierarchy (free => matrix => classical), and
# each is decided by the rank of a finite linear system built from the
# kernel of L_A(X).  On the square the picture is easy to draw by hand:
# corners are extreme in every sense at level 1, edge points in none.

import numpy as np

from freespec import MatrixTuple, REAL, classify, free_cube, pauli_pair

square = free_cube(2).pencil


def point(*xs):
    return MatrixTuple(np.array([[[float(x)] ] for x in xs]), REAL)


def show(name, P, X):
    r = classify(P, X)
    print(f"{name:24s} classical={str(r.classical):5s} matrix={str(r.matrix):5s} "
          f"free={str(r.free):5s} irreducible={str(r.irreducible):5s} "
          f"dim K = {r.dilation_dim}")


show("corner (1, -1)", square, point(1.0, -1.0))
show("edge midpoint (1, 0)", square, point(1.0, 0.0))
show("edge point (1, 0.3)", square, point(1.0, 0.3))

# at level 2 the square has boundary points no scalar point can imitate:
# irreducible pairs of reflections, which are free extreme
show("reflection pair", square, pauli_pair())

# a direct sum of two free extreme points has trivial dilation subspace
# but is reducible, hence not free extreme -- classification sees both
U = np.array([[np.cos(0.7), -np.sin(0.7)], [np.sin(0.7), np.cos(0.7)]])
A = pauli_pair().entries
twisted = np.stack([U.T @ M @ U for M in A])
both = np.concatenate(
    [np.stack([np.block([[M, np.zeros((2, 2))], [np.zeros((2, 2)), N]])
               for M, N in zip(A, twisted)])]
)
show("direct sum of two", square, MatrixTuple(both, REAL))
