import numpy as np
import pytest

from freespec import (
    LevelTooLarge,
    MatrixConvexCombination,
    MatrixTuple,
    decompose_to_free_extremes,
    matrix_extreme_test,
    random_bounded_pencil,
    random_point,
    refute_matrix_extreme,
    search_nontrivial_dilation,
    verify_combination,
)
from freespec.tuples import REAL

from conftest import scalar_tuple


def test_dilation_search_fails_on_free_extreme(cube2, pauli):
    rep = search_nontrivial_dilation(cube2, pauli, trials=2000, seed=1)
    assert not rep.found
    assert rep.trials == 2000
    assert rep.best_violation < 0


def test_dilation_search_fails_on_vertex(cube2):
    rep = search_nontrivial_dilation(cube2, scalar_tuple(1.0, -1.0), trials=2000, seed=2)
    assert not rep.found


def test_dilation_search_finds_witness_on_edge_point(cube2):
    # dim K = 1 here, so a constructive witness must appear quickly
    rep = search_nontrivial_dilation(cube2, scalar_tuple(1.0, 0.3), trials=100, seed=3)
    assert rep.found
    assert rep.witness is not None
    assert np.linalg.norm(rep.witness["beta"]) > 0
    assert rep.witness["lambda_min"] >= -1e-7


def test_dilation_search_interior_always_succeeds(cube2):
    rep = search_nontrivial_dilation(cube2, scalar_tuple(0.1, 0.2), trials=20, seed=4)
    assert rep.found


def test_refute_edge_point(cube2):
    rep = refute_matrix_extreme(cube2, scalar_tuple(1.0, 0.3), trials=200, seed=5)
    assert rep.found


def test_refute_vertex(cube2):
    rep = refute_matrix_extreme(cube2, scalar_tuple(1.0, 1.0), trials=200, seed=6)
    assert not rep.found


def test_refute_agrees_with_matrix_test_level_one():
    # random planar pencils here have irreducible cubic determinants, so
    # their boundaries carry no segments and every sampled point is extreme;
    # the refuter must never claim otherwise
    rng = np.random.default_rng(8)
    for k in range(20):
        P = random_bounded_pencil(rng, 2, 3)
        x = random_point(rng, P, 1, where="boundary")
        is_ext = matrix_extreme_test(P, x)[0]
        rep = refute_matrix_extreme(P, x, trials=150, seed=k)
        if rep.found:
            assert not is_ext


def test_refute_finds_flat_face_points(cube2):
    # the square has genuinely flat faces, so non-corner boundary points
    # must be refuted with a macroscopic two-point blend
    rng = np.random.default_rng(9)
    hits = 0
    for k in range(10):
        x = random_point(rng, cube2, 1, where="boundary")
        is_ext = matrix_extreme_test(cube2, x)[0]
        rep = refute_matrix_extreme(cube2, x, trials=150, seed=k)
        if rep.found:
            assert not is_ext
            y, z = rep.witness["points"]
            assert np.linalg.norm(y.entries - z.entries) > 1e-3
            hits += 1
        else:
            assert is_ext  # only corners escape refutation
    assert hits > 0


def test_refute_rejects_large_levels(cube2):
    X = MatrixTuple(np.zeros((2, 4, 4)), REAL)
    with pytest.raises(LevelTooLarge):
        refute_matrix_extreme(cube2, X)


def test_verify_combination_identity(pauli):
    comb = MatrixConvexCombination(gammas=(np.eye(2),), points=(pauli,), n=2)
    ok, resid = verify_combination(comb, pauli)
    assert ok and resid <= 1e-12


def test_verify_combination_on_decomposition_output(cube2):
    X = scalar_tuple(0.3, -0.6)
    dec = decompose_to_free_extremes(cube2, X)
    ok, resid = verify_combination(dec.combination, X)
    assert ok and resid <= 1e-6


def test_verify_combination_detects_mismatch(cube2, pauli):
    comb = MatrixConvexCombination(gammas=(np.eye(2),), points=(pauli,), n=2)
    other = MatrixTuple(np.stack([np.eye(2) * 0.5, np.eye(2) * 0.1]), REAL)
    ok, resid = verify_combination(comb, other)
    assert not ok and resid > 1e-3
