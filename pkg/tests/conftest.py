import numpy as np
import pytest

from freespec import (
    LinearPencil,
    MatrixTuple,
    REAL,
    free_cube,
    matrix_ball,
    pauli_pair,
    random_bounded_pencil,
    random_point,
)

# shapes for which bounded real pencils exist at the sizes used in tests
# (g=3, m=2 admits no bounded real pencil: three symmetric 2x2 coefficients
# cannot have a trivial joint recession cone)
BOUNDED_SHAPES = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)]


@pytest.fixture(scope="session")
def cube2():
    return free_cube(2).pencil


@pytest.fixture(scope="session")
def cube1():
    return free_cube(1).pencil


@pytest.fixture(scope="session")
def ball2():
    return matrix_ball(2).pencil


@pytest.fixture(scope="session")
def pauli():
    return pauli_pair()


def scalar_tuple(*xs) -> MatrixTuple:
    """Level-1 tuple with the given real coordinates."""
    return MatrixTuple(np.array([[[float(x)]] for x in xs]), REAL)


def boundary_points(seed, count, shapes=BOUNDED_SHAPES, levels=(1, 2, 3)):
    """Yield (pencil, boundary point) pairs from random bounded pencils."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        g, m = shapes[i % len(shapes)]
        P = random_bounded_pencil(rng, g, m)
        n = levels[i % len(levels)]
        yield P, random_point(rng, P, n, where="boundary")
