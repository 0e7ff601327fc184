import numpy as np
import pytest

from freespec import (
    AlreadyMaximal,
    MatrixTuple,
    apply_combination,
    block_diagonalize,
    classify,
    decompose_to_free_extremes,
    dilation_subspace,
    direct_sum,
    free_extreme_test,
    maximal_one_dilation,
    membership,
    random_tuple,
    random_unitary,
    unitarily_equivalent,
)
from freespec.tuples import REAL

from conftest import scalar_tuple


def test_one_dilation_of_cube_origin(cube1):
    # [[0, a],[a, psi]] in the g=1 cube: the maximal dilation has
    # eigenvalues +-1, i.e. a self-adjoint unitary
    cand = maximal_one_dilation(cube1, scalar_tuple(0.0))
    assert cand.dim_before == 1 and cand.dim_after == 0
    Y = cand.Y_hat
    assert Y.n == 2
    evals = np.linalg.eigvalsh(Y.entries[0])
    assert np.allclose(np.abs(evals), 1.0, atol=1e-6)
    assert membership(cube1, Y).status == "Boundary"


def test_one_dilation_strictly_decreases_subspace(cube2):
    X = scalar_tuple(1.0, 0.3)
    before = dilation_subspace(cube2, X).dim
    cand = maximal_one_dilation(cube2, X)
    assert cand.dim_before == before
    assert cand.dim_after < before
    assert dilation_subspace(cube2, cand.Y_hat).dim == cand.dim_after


def test_one_dilation_rejects_maximal_point(cube2, pauli):
    with pytest.raises(AlreadyMaximal):
        maximal_one_dilation(cube2, pauli)


def test_block_diagonalize_irreducible(pauli):
    U, blocks = block_diagonalize(pauli)
    assert len(blocks) == 1
    assert unitarily_equivalent(blocks[0], pauli)


def test_block_diagonalize_recovers_hidden_sum(pauli):
    rng = np.random.default_rng(3)
    Z = random_tuple(rng, 2, 3)
    hidden = direct_sum(pauli, Z)
    W = random_unitary(rng, 5)
    Y = MatrixTuple(
        np.einsum("ri,jrs,sk->jik", W.conj(), hidden.entries, W), REAL
    )
    U, blocks = block_diagonalize(Y)
    sizes = sorted(b.n for b in blocks)
    assert sizes == [2, 3]
    small = min(blocks, key=lambda b: b.n)
    big = max(blocks, key=lambda b: b.n)
    assert unitarily_equivalent(small, pauli)
    assert unitarily_equivalent(big, Z)
    # U must actually block-diagonalize Y
    D = np.einsum("ri,jrs,sk->jik", U.conj(), Y.entries, U)
    off = D.copy()
    off[:, : small.n, : small.n] = 0
    off[:, small.n :, small.n :] = 0
    assert np.linalg.norm(off) <= 1e-8 * (1 + np.linalg.norm(Y.entries))


def check_decomposition(P, X, dec, tol_resid=1e-6):
    X_back = apply_combination(dec.combination)
    scale = 1 + np.linalg.norm(X.entries)
    assert np.linalg.norm(X_back.entries - X.entries) <= tol_resid * scale
    assert dec.residual <= tol_resid * scale
    for F in dec.summands:
        ok, _ = free_extreme_test(P, F)
        assert ok
        assert membership(P, F).status == "Boundary"
    assert dec.total_size == sum(F.n for F in dec.summands)
    assert dec.total_size <= X.n * (P.g + 1)
    assert dec.steps <= X.n * P.g


def test_decompose_free_extreme_is_identity(cube2, pauli):
    dec = decompose_to_free_extremes(cube2, pauli)
    assert len(dec.summands) == 1
    assert dec.steps == 0
    assert unitarily_equivalent(dec.summands[0], pauli)
    check_decomposition(cube2, pauli, dec)


def test_decompose_square_center(cube2):
    X = scalar_tuple(0.0, 0.0)
    dec = decompose_to_free_extremes(cube2, X)
    check_decomposition(cube2, X, dec)
    assert dec.total_size <= 3  # n(g+1) with n=1, g=2


def test_decompose_edge_midpoint_recovers_classical_mix(cube2):
    # (1, 0) = midpoint of the vertices (1, 1) and (1, -1)
    X = scalar_tuple(1.0, 0.0)
    dec = decompose_to_free_extremes(cube2, X)
    check_decomposition(cube2, X, dec)
    if all(F.n == 1 for F in dec.summands):
        xs = sorted(float(F.entries[0, 0, 0]) for F in dec.summands)
        ys = sorted(float(F.entries[1, 0, 0]) for F in dec.summands)
        assert np.allclose(xs, [1.0, 1.0], atol=1e-6)
        assert np.allclose(ys, [-1.0, 1.0], atol=1e-6)
        weights = [(g.conj().T @ g).real.item() for g in dec.gammas]
        assert np.allclose(sorted(weights), [0.5, 0.5], atol=1e-6)


def test_decompose_level2_interior_of_ball(ball2):
    rng = np.random.default_rng(5)
    ents = np.stack(
        [0.3 * (lambda B: (B + B.T) / 2)(rng.normal(size=(2, 2))) for _ in range(2)]
    )
    X = MatrixTuple(ents, REAL)
    assert membership(ball2, X).status == "Interior"
    dec = decompose_to_free_extremes(ball2, X)
    check_decomposition(ball2, X, dec)


def test_decompose_reducible_input_with_presplit(cube2, pauli):
    X = direct_sum(scalar_tuple(0.5, -0.2), scalar_tuple(-0.1, 0.9))
    a = decompose_to_free_extremes(cube2, X, seed=0)
    b = decompose_to_free_extremes(cube2, X, seed=0, presplit=True)
    check_decomposition(cube2, X, a)
    check_decomposition(cube2, X, b)


def test_decomposition_audit_trace(cube2):
    X = scalar_tuple(0.4, 0.1)
    dec = decompose_to_free_extremes(cube2, X)
    # every recorded step must shrink the dilation subspace, the chain of
    # dims must be consistent, and the last step must reach zero
    trace = dec.dilation_trace
    assert dec.steps == len(trace)
    for c in trace:
        assert c.dim_after < c.dim_before
    for prev, nxt in zip(trace, trace[1:]):
        assert nxt.dim_before == prev.dim_after
    assert trace[-1].dim_after == 0
