import numpy as np
import pytest

from freespec import (
    MatrixTuple,
    NotStrictContraction,
    OutsideCube,
    SchemaError,
    SingularT,
    classify,
    block_diagonalize,
    evaluate_L,
    free_cube,
    free_extreme_test,
    get_named_point,
    get_named_set,
    halmos_dilation,
    is_bounded_level1,
    m1g_maximal_dilation,
    matrix_ball,
    mconv_membership,
    mdg_pencil,
    membership,
    pauli_pair,
    random_tuple,
)
from freespec.tuples import COMPLEX, REAL

from conftest import scalar_tuple


def test_cube_level_one_is_unit_cube(cube2):
    assert membership(cube2, scalar_tuple(0.0, 0.0)).status == "Interior"
    assert membership(cube2, scalar_tuple(1.0, 1.0)).status == "Boundary"
    assert membership(cube2, scalar_tuple(0.99, -1.01)).status == "Outside"


def test_cube_identity_tuple_boundary(cube2):
    X = MatrixTuple(np.stack([np.eye(2), np.eye(2)]), REAL)
    assert membership(cube2, X).status == "Boundary"


def test_named_sets_bounded():
    for name in ("cube:2", "ball:3", "mdg:1,1"):
        assert is_bounded_level1(get_named_set(name).pencil)


def test_ball_matches_quadratic_criterion(ball2):
    rng = np.random.default_rng(9)
    for _ in range(40):
        ents = np.stack(
            [(lambda B: (B + B.T) / 2)(rng.normal(size=(2, 2))) for _ in range(2)]
        )
        X = MatrixTuple(0.7 * ents, REAL)
        lam_pencil = membership(ball2, X).min_eigenvalue
        Q = np.einsum("jab,jbc->ac", X.entries, X.entries)
        quad_ok = float(np.linalg.eigvalsh(Q)[-1]) <= 1 + 1e-7
        assert (lam_pencil >= -1e-7) == quad_ok


def test_ball_boundary_scaling(ball2):
    # scale a point radially onto the boundary: largest eigenvalue of
    # sum X_j^2 must land at 1
    rng = np.random.default_rng(3)
    ents = np.stack(
        [(lambda B: (B + B.T) / 2)(rng.normal(size=(3, 3))) for _ in range(2)]
    )
    Q = np.einsum("jab,jbc->ac", ents, ents)
    s = 1.0 / np.sqrt(float(np.linalg.eigvalsh(Q)[-1]))
    X = MatrixTuple(s * ents, REAL)
    assert membership(ball2, X).status == "Boundary"
    Qs = np.einsum("jab,jbc->ac", X.entries, X.entries)
    assert float(np.linalg.eigvalsh(Qs)[-1]) == pytest.approx(1.0, abs=1e-7)


def test_mdg_zero_interior_and_w_boundary():
    ns = mdg_pencil(1, 1)
    P = ns.pencil
    zero = MatrixTuple(np.zeros((3, 1, 1), dtype=complex), COMPLEX)
    assert membership(P, zero).status == "Interior"
    # the tuple (T, X) = (0, 1): coordinates (U, V, X) = (0, 0, 1)
    w = MatrixTuple(np.array([[[0.0]], [[0.0]], [[1.0]]], dtype=complex), COMPLEX)
    assert membership(P, w).status == "Boundary"
    rep = classify(P, w)
    assert not rep.free
    assert rep.classical


def test_mdg_row_contraction_criterion():
    ns = mdg_pencil(1, 2)
    P = ns.pencil
    rng = np.random.default_rng(21)
    for _ in range(20):
        T = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        Xs = [(lambda B: (B + B.conj().T) / 2)(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) for _ in range(2)]
        from freespec import row_to_selfadjoint

        X = row_to_selfadjoint([0.25 * T], [0.25 * Xj for Xj in Xs])
        R = (0.25 * T) @ (0.25 * T).conj().T + sum(
            (0.25 * Xj) @ (0.25 * Xj) for Xj in Xs
        )
        quad_ok = float(np.linalg.eigvalsh(R)[-1]) <= 1 + 1e-7
        assert (membership(P, X).min_eigenvalue >= -1e-7) == quad_ok


def test_halmos_squares_to_identity(cube2):
    rng = np.random.default_rng(6)
    ents = np.stack(
        [(lambda B: (B + B.T) / 2)(rng.normal(size=(3, 3))) for _ in range(2)]
    )
    ents = np.stack([0.9 * M / np.linalg.norm(M, 2) for M in ents])
    X = MatrixTuple(ents, REAL)
    H = halmos_dilation(X)
    assert H.n == 6
    for j in range(2):
        assert np.linalg.norm(H.entries[j] @ H.entries[j] - np.eye(6)) <= 1e-8
    # compression by [I; 0] recovers X
    assert np.allclose(H.entries[:, :3, :3], X.entries)


def test_halmos_of_zero_is_flip():
    H = halmos_dilation(scalar_tuple(0.0))
    evals = np.linalg.eigvalsh(H.entries[0])
    assert np.allclose(evals, [-1.0, 1.0])


def test_halmos_blocks_are_free_extreme_in_cube(cube2):
    rng = np.random.default_rng(15)
    X = MatrixTuple(
        0.6 * np.stack([(lambda B: (B + B.T) / 2)(rng.normal(size=(2, 2))) for _ in range(2)]),
        REAL,
    )
    H = halmos_dilation(X)
    _, blocks = block_diagonalize(H)
    for blk in blocks:
        ok, _ = free_extreme_test(cube2, blk)
        assert ok


def test_halmos_rejects_points_outside_cube():
    with pytest.raises(OutsideCube):
        halmos_dilation(scalar_tuple(1.5))


def test_m1g_explicit_small_case():
    T = 0.5 * np.eye(1)
    X = MatrixTuple(np.zeros((1, 1, 1)), REAL)
    S, Y = m1g_maximal_dilation(T, X)
    n2 = 2
    defect = S @ S.conj().T + np.einsum("jab,jbc->ac", Y.entries, Y.entries)
    assert np.linalg.norm(defect - np.eye(n2)) <= 1e-8
    assert np.linalg.svd(S, compute_uv=False)[-1] > 0
    # compression recovers (T, X)
    assert np.allclose(S[:1, :1], T)
    assert np.allclose(Y.entries[:, :1, :1], X.entries)


def test_m1g_random_contractions():
    rng = np.random.default_rng(30)
    for k in range(5):
        n = 2
        T = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        Xs = np.stack(
            [(lambda B: (B + B.conj().T) / 2)(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))]
        )
        R = T @ T.conj().T + np.einsum("jab,jbc->ac", Xs, Xs)
        s = 0.8 / np.sqrt(float(np.linalg.eigvalsh(R)[-1]))
        T, Xs = s * T, s * Xs
        X = MatrixTuple(Xs, COMPLEX)
        S, Y = m1g_maximal_dilation(T, X)
        defect = S @ S.conj().T + np.einsum("jab,jbc->ac", Y.entries, Y.entries)
        assert np.linalg.norm(defect - np.eye(2 * n)) <= 1e-8
        assert np.linalg.svd(S, compute_uv=False)[-1] > 1e-10


def test_m1g_rejects_non_contraction():
    with pytest.raises(NotStrictContraction):
        m1g_maximal_dilation(np.eye(2), MatrixTuple(np.zeros((1, 2, 2)), REAL))


def test_m1g_rejects_singular_T():
    with pytest.raises(SingularT):
        m1g_maximal_dilation(np.zeros((2, 2)), MatrixTuple(np.zeros((1, 2, 2)), REAL))


def test_pauli_disk_membership(pauli):
    for theta in np.linspace(0, 2 * np.pi, 12):
        ok, _ = mconv_membership(pauli, scalar_tuple(np.cos(theta), np.sin(theta)))
        assert ok
    ok, margin = mconv_membership(pauli, scalar_tuple(1.01, 0.0))
    assert not ok and margin < 0


def test_registry_roundtrip():
    ns = get_named_set("cube:3")
    assert ns.pencil.g == 3
    pt = get_named_point("zero:2", ns.pencil)
    assert pt.n == 2 and np.allclose(pt.entries, 0)
    rnd = get_named_point("random:2", ns.pencil, seed=4)
    assert membership(ns.pencil, rnd).status == "Interior"
    assert get_named_point("pauli").n == 2


def test_registry_rejects_malformed_names():
    with pytest.raises(SchemaError):
        get_named_set("simplex:2")
    with pytest.raises(SchemaError):
        get_named_set("cube:x")
    with pytest.raises(SchemaError):
        get_named_point("zero:2")  # needs a set for the variable count
