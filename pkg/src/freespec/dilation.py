"""Constructive decomposition into free extreme points.

A point X in a bounded real free spectrahedron D_A dilates, one extra
row and column at a time, to a direct sum of free extreme points:

1. pick a nonzero beta in the dilation subspace of X;
2. rescale it so the largest feasible dilation scale is exactly 1;
3. choose psi as an extreme point of the compact spectrahedron of
   feasible bottom-right corners; the dilated point

       Y = [[X, beta], [beta*, psi]]

   then has a strictly smaller dilation subspace;
4. iterate until the subspace vanishes, split into irreducible blocks,
   and read the matrix convex combination off the compression
   X = V* Y_final V with V = [I; 0].

The dilation count is at most n g, so the summand sizes total at most
n (g + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AlreadyMaximal,
    BlockingFailure,
    DescentFailure,
    FieldUnsupported,
    OutsideDomain,
    UnboundedDomain,
)
from .extreme import dilation_subspace, free_extreme_test
from .pencil import LinearPencil, is_bounded_level1, membership
from .solver import dilation_feasibility_pencil, extreme_point_of_spectrahedron, feasibility_margin, maximize_alpha
from .tolerances import DEFAULT, Tolerances
from .tuples import REAL, MatrixConvexCombination, MatrixTuple, selfadjoint_commutant_basis


@dataclass(frozen=True)
class DilationCandidate:
    beta_hat: np.ndarray   # (g, n) column tuple, already rescaled
    psi_hat: np.ndarray    # (g,) bottom-right corner
    Y_hat: MatrixTuple     # the dilated point, one level up
    dim_before: int
    dim_after: int


@dataclass(frozen=True)
class Decomposition:
    summands: tuple        # free extreme MatrixTuples
    gammas: tuple          # gamma_i with sum gamma_i* gamma_i = I
    dilation_trace: tuple  # audit log: the accepted DilationCandidates in order
    total_size: int
    residual: float

    @property
    def steps(self) -> int:
        return len(self.dilation_trace)

    @property
    def summand_levels(self) -> tuple:
        return tuple(p.n for p in self.summands)

    @property
    def combination(self) -> MatrixConvexCombination:
        return MatrixConvexCombination(
            gammas=self.gammas, points=self.summands, n=self.gammas[0].shape[1]
        )


def dilate_tuple(X: MatrixTuple, beta: np.ndarray, psi: np.ndarray) -> MatrixTuple:
    """Append one row/column: entries [[X_j, beta_j], [beta_j*, psi_j]]."""
    g, n = X.g, X.n
    out = np.zeros((g, n + 1, n + 1))
    out[:, :n, :n] = X.entries
    out[:, :n, n] = beta
    out[:, n, :n] = beta
    out[:, n, n] = psi
    return MatrixTuple(out, REAL)


def _one_dilation_attempt(P: LinearPencil, X: MatrixTuple, tol: Tolerances, seed: int) -> DilationCandidate:
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")
    sub = dilation_subspace(P, X, tol)
    if sub.dim == 0:
        raise AlreadyMaximal("dilation subspace is trivial")

    rng = np.random.default_rng(seed)
    choices = [sub.basis[0]]
    for _ in range(4):
        c = rng.normal(size=sub.dim)
        b = np.einsum("k,kgn->gn", c, sub.basis)
        choices.append(b / np.linalg.norm(b))

    last_err: Exception | None = None
    for beta in choices:
        try:
            alpha, psi0 = maximize_alpha(P, X, beta, tol)
        except Exception as e:  # degenerate direction; try the next one
            last_err = e
            continue
        if alpha < 1e-10:
            continue
        beta_hat = alpha * np.asarray(beta, dtype=float)
        gam = dilation_feasibility_pencil(P, X, beta_hat, 1.0, tol)
        f0 = float(np.linalg.eigvalsh(gam(psi0))[0])
        if f0 < -tol.feas:  # witness went stale under the alpha=1 rebuild
            st = feasibility_margin(gam, start=psi0, tol=tol, polish=True)
            if st.margin < -tol.feas:
                continue
            psi0 = st.witness
        psi_hat = extreme_point_of_spectrahedron(gam, psi0, tol)
        Y = dilate_tuple(X, beta_hat, psi_hat)
        dim_after = dilation_subspace(P, Y, tol).dim
        return DilationCandidate(
            beta_hat=beta_hat, psi_hat=np.asarray(psi_hat, dtype=float), Y_hat=Y,
            dim_before=sub.dim, dim_after=dim_after,
        )
    raise DescentFailure(f"no usable dilation direction (last error: {last_err})")


def maximal_one_dilation(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT, seed: int = 0) -> DilationCandidate:
    """One maximal 1-dilation step; the dilation subspace must shrink.

    A failed shrink retries once with fresh direction choices before
    surfacing DescentFailure.
    """
    if X.field != REAL or P.field != REAL:
        raise FieldUnsupported("dilation descent is implemented over the reals")
    cand = _one_dilation_attempt(P, X, tol, seed)
    if cand.dim_after < cand.dim_before:
        return cand
    cand2 = _one_dilation_attempt(P, X, tol, seed + 7919)
    if cand2.dim_after < cand2.dim_before:
        return cand2
    raise DescentFailure(
        f"dilation subspace did not shrink ({cand.dim_before} -> {cand.dim_after}, "
        f"retry {cand2.dim_before} -> {cand2.dim_after})"
    )


def block_diagonalize(
    Y: MatrixTuple, tol: Tolerances = DEFAULT, seed: int = 0
) -> tuple[np.ndarray, list[MatrixTuple]]:
    """Split Y into irreducible diagonal blocks: U* Y U = blkdiag(blocks).

    Eigenspaces of a random self-adjoint commutant element are invariant
    for the tuple; recursing on each eigenspace until the commutant is
    trivial yields the irreducible blocks.  Ambiguous eigenvalue clusters
    retry with a fresh random element and eventually raise
    BlockingFailure carrying the gap statistics.
    """
    n = Y.n
    basis = selfadjoint_commutant_basis(Y, tol)
    if basis.shape[0] <= 1:
        return np.eye(n, dtype=Y.entries.dtype), [Y]

    rng = np.random.default_rng(seed)
    last_gaps = None
    for attempt in range(6):
        c = rng.normal(size=basis.shape[0])
        S = np.einsum("k,kab->ab", c, basis)
        S = 0.5 * (S + S.conj().T)
        w, V = np.linalg.eigh(S)
        spread = float(w[-1] - w[0]) + 1e-30
        gaps = np.diff(w)
        thresh = 1e-6 * (1.0 + spread)
        splits = np.nonzero(gaps > thresh)[0]
        last_gaps = gaps
        bounds = [0] + [int(s) + 1 for s in splits] + [n]
        if len(bounds) < 3:  # a single cluster cannot split a reducible tuple
            continue
        ok = True
        pieces = []
        for a, b in zip(bounds[:-1], bounds[1:]):
            Vk = V[:, a:b]
            sub = np.einsum("ri,jrs,sk->jik", Vk.conj(), Y.entries, Vk)
            # invariance check: Y must not couple the eigenspace to its complement
            Vrest = np.concatenate([V[:, : a], V[:, b:]], axis=1)
            couple = np.einsum("ri,jrs,sk->jik", Vrest.conj(), Y.entries, Vk)
            if np.linalg.norm(couple) > tol.block * (1.0 + Y.norm()):
                ok = False
                break
            pieces.append((Vk, MatrixTuple(sub, Y.field)))
        if not ok:
            continue
        U_cols = []
        blocks: list[MatrixTuple] = []
        for Vk, sub in pieces:
            Uk, sub_blocks = block_diagonalize(sub, tol, seed=seed + attempt + 1)
            U_cols.append(Vk @ Uk)
            blocks.extend(sub_blocks)
        U = np.concatenate(U_cols, axis=1)
        return U, blocks
    raise BlockingFailure(f"could not separate eigenvalue clusters; gaps = {last_gaps}")


def decompose_to_free_extremes(
    P: LinearPencil,
    X: MatrixTuple,
    tol: Tolerances = DEFAULT,
    seed: int = 0,
    presplit: bool = False,
) -> Decomposition:
    """Write X as sum gamma_i* F_i gamma_i over free extreme points F_i.

    Iterates maximal 1-dilations (at most n g of them) until the dilation
    subspace vanishes, block-diagonalizes the final point, certifies each
    block free extreme, and reads the gammas off the block rows of U* V
    with V = [I_n; 0].  The summand sizes satisfy sum n_i <= n (g + 1).
    """
    if X.field != REAL or P.field != REAL:
        raise FieldUnsupported("decomposition is implemented over the reals")
    if not is_bounded_level1(P, tol):
        raise UnboundedDomain("decomposition requires a bounded spectrahedron")
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")

    if presplit:
        return _decompose_presplit(P, X, tol, seed)

    n0 = X.n
    Y = X
    trace: list[DilationCandidate] = []
    cap = n0 * P.g
    cur = dilation_subspace(P, Y, tol).dim
    while cur > 0:
        if len(trace) >= cap:
            raise DescentFailure(f"descent exceeded {cap} steps")
        cand = maximal_one_dilation(P, Y, tol, seed=seed + len(trace))
        trace.append(cand)
        Y = cand.Y_hat
        cur = cand.dim_after

    U, blocks = block_diagonalize(Y, tol, seed=seed)
    gamma_full = U.conj().T[:, :n0]
    summands: list[MatrixTuple] = []
    gammas: list[np.ndarray] = []
    row = 0
    for F in blocks:
        gam = gamma_full[row : row + F.n, :]
        row += F.n
        if np.linalg.norm(gam) <= 1e-12:
            continue
        ok, _ = free_extreme_test(P, F, tol)
        if not ok:
            raise DescentFailure("a summand failed free-extreme certification")
        summands.append(F)
        gammas.append(gam)

    recon = np.zeros_like(X.entries)
    for gam, F in zip(gammas, summands):
        recon = recon + np.einsum("ri,jrs,sk->jik", gam.conj(), F.entries, gam)
    residual = float(np.linalg.norm(recon - X.entries))
    if residual > tol.reconstruct * (1.0 + X.norm()):
        raise DescentFailure(f"reconstruction residual {residual:.3e}")
    total = int(sum(F.n for F in summands))
    if total > n0 * (P.g + 1):
        raise DescentFailure(f"total summand size {total} exceeds n(g+1)")
    return Decomposition(
        summands=tuple(summands), gammas=tuple(gammas), dilation_trace=tuple(trace),
        total_size=total, residual=residual,
    )


def _decompose_presplit(P: LinearPencil, X: MatrixTuple, tol: Tolerances, seed: int) -> Decomposition:
    """Block-diagonalize first, decompose each block, and recombine."""
    U, blocks = block_diagonalize(X, tol, seed=seed)
    summands: list[MatrixTuple] = []
    gammas: list[np.ndarray] = []
    trace: list[DilationCandidate] = []
    row = 0
    for F in blocks:
        proj = U.conj().T[row : row + F.n, :]  # F = proj X proj* block row
        row += F.n
        part = decompose_to_free_extremes(P, F, tol, seed=seed, presplit=False)
        trace.extend(part.dilation_trace)
        for gam, S in zip(part.gammas, part.summands):
            summands.append(S)
            gammas.append(gam @ proj)
    recon = np.zeros_like(X.entries)
    for gam, F in zip(gammas, summands):
        recon = recon + np.einsum("ri,jrs,sk->jik", gam.conj(), F.entries, gam)
    residual = float(np.linalg.norm(recon - X.entries))
    total = int(sum(F.n for F in summands))
    return Decomposition(
        summands=tuple(summands), gammas=tuple(gammas), dilation_trace=tuple(trace),
        total_size=total, residual=residual,
    )
