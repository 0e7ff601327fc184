"""Solver checks against brute-force oracles on low-dimensional instances."""

import itertools

import numpy as np
import pytest

from freespec import (
    AffinePencil,
    InfeasibleBeta,
    MatrixTuple,
    dilation_feasibility_pencil,
    dilation_subspace,
    extreme_point_of_spectrahedron,
    feasibility_margin,
    free_cube,
    max_step,
    maximize_alpha,
    membership,
)
from freespec.tuples import REAL

from conftest import scalar_tuple


def grid_margin(P: AffinePencil, lo=-3.0, hi=3.0, steps=61):
    """Dense-grid oracle for max_y lambda_min(M0 + sum y_k M_k), k <= 2."""
    k = len(P.Ms)
    axes = [np.linspace(lo, hi, steps)] * k
    best = -np.inf
    best_y = None
    for y in itertools.product(*axes):
        M = P.M0 + sum(c * Mk for c, Mk in zip(y, P.Ms))
        lam = float(np.linalg.eigvalsh(M)[0])
        if lam > best:
            best, best_y = lam, np.array(y)
    return best, best_y


def small_affine_pencil(seed, size=3, k=2):
    """Random compact instance: a dense block plus box rows |y_k| <= 2."""
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(k + 1):
        B = rng.normal(size=(size, size))
        mats.append((B + B.T) / 2)
    dim = size + 2 * k
    M0 = np.zeros((dim, dim))
    M0[:size, :size] = mats[0] + size * np.eye(size)
    Ms = []
    for j in range(k):
        Mj = np.zeros((dim, dim))
        Mj[:size, :size] = mats[1 + j]
        M0[size + 2 * j, size + 2 * j] = 2.0
        M0[size + 2 * j + 1, size + 2 * j + 1] = 2.0
        Mj[size + 2 * j, size + 2 * j] = 1.0
        Mj[size + 2 * j + 1, size + 2 * j + 1] = -1.0
        Ms.append(Mj)
    return AffinePencil(M0, tuple(Ms))


@pytest.mark.parametrize("seed", [0, 1, 2, 5, 9])
def test_feasibility_margin_matches_grid(seed):
    P = small_affine_pencil(seed)
    coarse, y0 = grid_margin(P, steps=41)
    fine, _ = grid_margin(P, lo=y0[0] - 0.2, hi=y0[0] + 0.2, steps=81)
    st = feasibility_margin(P, polish=True)
    assert st.converged
    # solver must do at least as well as the nested grid, up to grid error
    assert st.margin >= fine - 1e-4
    # and its witness must actually achieve the reported margin
    M = P.M0 + sum(c * Mk for c, Mk in zip(st.witness, P.Ms))
    assert float(np.linalg.eigvalsh(M)[0]) == pytest.approx(st.margin, abs=1e-9)


def test_max_step_against_bisection():
    rng = np.random.default_rng(4)
    P = small_affine_pencil(17)
    y0 = feasibility_margin(P, polish=True).witness
    d = rng.normal(size=len(P.Ms))
    t = max_step(P, y0, d)

    def feasible(s):
        M = P.M0 + sum((y0[k] + s * d[k]) * P.Ms[k] for k in range(len(P.Ms)))
        return float(np.linalg.eigvalsh(M)[0]) >= -1e-12

    lo, hi = 0.0, 1.0
    while feasible(hi):
        hi *= 2.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    assert t == pytest.approx(lo, abs=1e-6)


def test_extreme_point_has_no_feasible_line():
    P = small_affine_pencil(23)
    y0 = feasibility_margin(P, polish=True).witness
    y = extreme_point_of_spectrahedron(P, y0)
    M = P.M0 + sum(c * Mk for c, Mk in zip(y, P.Ms))
    assert float(np.linalg.eigvalsh(M)[0]) >= -1e-8
    # extreme <=> no direction moves both ways while staying feasible
    rng = np.random.default_rng(0)
    for _ in range(40):
        d = rng.normal(size=len(P.Ms))
        d /= np.linalg.norm(d)
        fwd = max_step(P, y, d)
        back = max_step(P, y, -d)
        assert min(fwd, back) <= 1e-6


def test_maximize_alpha_cube_closed_form(cube2):
    # For the free cube at level 1, [[x_j, a b_j], [a b_j, psi_j]] is a cube
    # member iff each 2x2 block has both eigenvalues in [-1, 1]; the best
    # choice is psi_j = -x_j, giving a* = min_j sqrt((1 - x_j^2)) / |b_j|.
    X = scalar_tuple(0.3, -0.5)
    beta = np.array([[0.8], [0.6]])
    alpha, psi = maximize_alpha(cube2, X, beta)
    expected = min(np.sqrt(1 - 0.3**2) / 0.8, np.sqrt(1 - 0.5**2) / 0.6)
    assert alpha == pytest.approx(expected, rel=1e-6)


def test_maximize_alpha_scales_inversely_with_beta(cube1):
    X = scalar_tuple(0.0)
    a1, _ = maximize_alpha(cube1, X, np.array([[1.0]]))
    a2, _ = maximize_alpha(cube1, X, np.array([[0.5]]))
    assert a1 == pytest.approx(1.0, rel=1e-6)
    assert a2 == pytest.approx(2.0, rel=1e-6)


def test_maximize_alpha_dilation_is_member(cube2):
    # the returned (alpha, psi) must give a feasible one-step dilation;
    # on the boundary beta has to come from the dilation subspace
    X = scalar_tuple(1.0, 0.2)  # boundary point of the square
    sub = dilation_subspace(cube2, X)
    assert sub.dim >= 1
    beta = np.real(sub.basis[0])
    alpha, psi = maximize_alpha(cube2, X, beta)
    ents = np.stack(
        [
            np.array(
                [
                    [X.entries[j, 0, 0], alpha * beta[j, 0]],
                    [alpha * beta[j, 0], psi[j]],
                ]
            )
            for j in range(2)
        ]
    )
    Y = MatrixTuple(ents, REAL)
    assert membership(cube2, Y).status != "Outside"


def test_maximize_alpha_rejects_infeasible_base(cube2):
    X = scalar_tuple(1.5, 0.0)  # outside the square
    with pytest.raises(InfeasibleBeta):
        maximize_alpha(cube2, X, np.array([[1.0], [0.0]]))


def test_dilation_feasibility_pencil_margin_matches_membership(cube2):
    # the affine pencil at fixed (alpha, psi) reproduces L at the dilation
    X = scalar_tuple(0.4, -0.3)
    beta = np.array([[0.5], [0.2]])
    P = dilation_feasibility_pencil(cube2, X, beta, alpha=0.7)
    st = feasibility_margin(P, polish=True)
    assert st.converged
    assert st.margin > 0  # strictly inside: a feasible psi exists
