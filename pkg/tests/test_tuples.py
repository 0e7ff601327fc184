import numpy as np
import pytest

from freespec import (
    BadNormalization,
    DimensionMismatch,
    IllFormedCombination,
    InvalidTuple,
    MatrixConvexCombination,
    MatrixTuple,
    REAL,
    apply_combination,
    direct_sum,
    gamma_embed,
    irreducible,
    is_proper,
    pauli_pair,
    random_tuple,
    random_unitary,
    selfadjoint_commutant_basis,
    unitarily_equivalent,
)

from conftest import scalar_tuple


def test_tuple_rejects_nonhermitian():
    with pytest.raises(InvalidTuple):
        MatrixTuple(np.array([[[0.0, 1.0], [0.0, 0.0]]]), REAL)


def test_direct_sum_of_scalars():
    s = direct_sum(scalar_tuple(1.0), scalar_tuple(-1.0))
    assert s.n == 2
    assert np.array_equal(s.entries[0], np.diag([1.0, -1.0]))


def test_apply_combination_single_identity_term(pauli):
    comb = MatrixConvexCombination(gammas=(np.eye(2),), points=(pauli,), n=2)
    out = apply_combination(comb)
    assert np.allclose(out.entries, pauli.entries)


def test_apply_combination_unitary_term(pauli):
    rng = np.random.default_rng(3)
    U = random_unitary(rng, 2)
    comb = MatrixConvexCombination(gammas=(U,), points=(pauli,), n=2)
    out = apply_combination(comb)
    assert unitarily_equivalent(out, pauli)


def test_combination_rejects_unnormalized_gammas(pauli):
    with pytest.raises(IllFormedCombination):
        MatrixConvexCombination(gammas=(1.01 * np.eye(2),), points=(pauli,), n=2)


def test_combination_rejects_shape_mismatch(pauli):
    with pytest.raises(DimensionMismatch):
        MatrixConvexCombination(gammas=(np.eye(3),), points=(pauli,), n=3)


def test_is_proper_examples(pauli):
    full = MatrixConvexCombination(gammas=(np.eye(2),), points=(pauli,), n=2)
    assert is_proper(full)
    # gamma = [1 0] maps R^2 onto R^1: full row rank, proper
    x = scalar_tuple(0.25)
    half = np.array([[1.0, 0.0], [0.0, 1.0]])
    comb = MatrixConvexCombination(
        gammas=(half[:1], half[1:]), points=(x, x), n=2
    )
    assert is_proper(comb)


def test_unitary_conjugation_is_detected():
    rng = np.random.default_rng(11)
    X = random_tuple(rng, 2, 3)
    U = random_unitary(rng, 3)
    Y = MatrixTuple(
        np.einsum("ri,jrs,sk->jik", U.conj(), X.entries, U), X.field
    )
    assert unitarily_equivalent(X, Y)
    assert not unitarily_equivalent(X, random_tuple(rng, 2, 3))


def test_irreducible_scalar_tuple():
    ok, cdim = irreducible(scalar_tuple(0.7))
    assert ok and cdim == 1


def test_irreducible_pauli_pair(pauli):
    ok, cdim = irreducible(pauli)
    assert ok and cdim == 1


def test_reducible_direct_sum(pauli):
    s = direct_sum(pauli, pauli)
    ok, cdim = irreducible(s)
    assert not ok
    # commutant of X (+) X is the full 2x2 pattern tensored with I: dim 3
    assert cdim == 3
    basis = selfadjoint_commutant_basis(s)
    assert basis.shape[0] == 3


def test_gamma_embed_scalar():
    pt = gamma_embed(scalar_tuple(0.4), np.array([[1.0]]))
    assert np.allclose(pt.mass, 1.0)
    assert np.allclose(pt.image.entries.ravel(), [0.4])


def test_gamma_embed_requires_unit_trace():
    with pytest.raises(BadNormalization):
        gamma_embed(scalar_tuple(0.4), np.array([[2.0]]))
