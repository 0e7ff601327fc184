import numpy as np
import pytest

from freespec import (
    MatrixTuple,
    OutsideDomain,
    classical_extreme_test,
    classify,
    dilation_subspace,
    direct_sum,
    free_extreme_test,
    matrix_extreme_test,
    random_bounded_pencil,
    random_point,
    random_unitary,
)
from freespec.tuples import REAL

from conftest import scalar_tuple


def conjugate(X, U):
    return MatrixTuple(
        np.einsum("ri,jrs,sk->jik", U.conj(), X.entries, U), X.field
    )


def test_subspace_dim_interior(cube2):
    X = MatrixTuple(np.zeros((2, 2, 2)), REAL)
    sub = dilation_subspace(cube2, X)
    assert sub.dim == 2 * 2  # ng: the kernel constraint is vacuous


def test_subspace_dim_edge_point(cube2):
    sub = dilation_subspace(cube2, scalar_tuple(1.0, 0.3))
    assert sub.dim == 1


def test_subspace_dim_pauli(cube2, pauli):
    assert dilation_subspace(cube2, pauli).dim == 0


def test_subspace_rejects_outside(cube2):
    with pytest.raises(OutsideDomain):
        dilation_subspace(cube2, scalar_tuple(2.0, 0.0))


def test_pauli_pair_fully_extreme(cube2, pauli):
    rep = classify(cube2, pauli)
    assert rep.classical and rep.matrix and rep.free
    assert rep.irreducible and rep.dilation_dim == 0


def test_square_vertex_extreme(cube2):
    rep = classify(cube2, scalar_tuple(1.0, -1.0))
    assert rep.classical and rep.matrix and rep.free


def test_square_edge_point_not_extreme(cube2):
    rep = classify(cube2, scalar_tuple(1.0, 0.3))
    assert not rep.classical and not rep.matrix and not rep.free
    assert rep.dilation_dim == 1


def test_interior_point_never_extreme(cube2):
    rep = classify(cube2, scalar_tuple(0.2, -0.4))
    assert not (rep.classical or rep.matrix or rep.free)


def test_identity_pair_reducible(cube2):
    X = MatrixTuple(np.stack([np.eye(2), np.eye(2)]), REAL)
    assert not free_extreme_test(cube2, X)[0]
    rep = classify(cube2, X)
    assert not rep.irreducible and not rep.free


def test_hierarchy_on_random_boundary_points():
    from conftest import boundary_points

    for P, X in boundary_points(seed=42, count=15):
        rep = classify(P, X)
        if rep.free:
            assert rep.matrix
        if rep.matrix:
            assert rep.classical


def test_classify_unitarily_invariant():
    rng = np.random.default_rng(12)
    P = random_bounded_pencil(rng, 2, 3)
    X = random_point(rng, P, 2, where="boundary")
    U = random_unitary(rng, 2)
    a = classify(P, X)
    b = classify(P, conjugate(X, U))
    assert (a.classical, a.matrix, a.free) == (b.classical, b.matrix, b.free)
    assert a.dilation_dim == b.dilation_dim
    assert a.kernel_dim == b.kernel_dim


def test_matrix_agrees_with_classical_at_level_one():
    rng = np.random.default_rng(77)
    for _ in range(25):
        P = random_bounded_pencil(rng, 2, 3)
        x = random_point(rng, P, 1, where="boundary")
        c = classical_extreme_test(P, x)[0]
        m = matrix_extreme_test(P, x)[0]
        assert c == m


def test_direct_sum_of_free_extremes_has_trivial_subspace(cube2, pauli):
    # reducible, hence not free extreme, but the dilation subspace still
    # vanishes for sums of free extreme points
    X = direct_sum(pauli, conjugate(pauli, random_unitary(np.random.default_rng(1), 2)))
    sub = dilation_subspace(cube2, X)
    assert sub.dim == 0
    rep = classify(cube2, X)
    assert not rep.irreducible and not rep.free


def test_free_test_interior_short_circuit(cube2):
    ok, info = free_extreme_test(cube2, scalar_tuple(0.0, 0.0))
    assert not ok
