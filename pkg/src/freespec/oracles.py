"""Randomized oracles that cross-examine the linear-system verdicts.

These deliberately avoid the classification code paths: a dilation
witness is validated by a single eigenvalue check of the dilated pencil,
and a convex-combination witness by direct reconstruction.  Negative
results are evidence, not proof; positive results are certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LevelTooLarge, OutsideDomain
from .extreme import dilation_subspace
from .pencil import LinearPencil, evaluate_L, membership
from .tolerances import DEFAULT, Tolerances
from .tuples import (
    COMPLEX,
    REAL,
    MatrixConvexCombination,
    MatrixTuple,
    apply_combination,
    is_proper,
    unitarily_equivalent,
)
from .sampling import random_point, rng_from


@dataclass(frozen=True)
class SearchReport:
    found: bool
    trials: int
    best_violation: float   # largest lambda_min of a dilation seen (>= -tol.feas when found)
    witness: dict | None


def search_nontrivial_dilation(
    P: LinearPencil,
    X: MatrixTuple,
    trials: int = 10000,
    seed: int = 0,
    tol: Tolerances = DEFAULT,
) -> SearchReport:
    """Hunt for [[X, b], [b*, psi]] in D_A with b != 0 by random sampling.

    Each trial draws (beta, alpha, psi) and performs one eigenvalue
    check of the dilated pencil -- no Schur complements, no kernels.
    When the dilation subspace of X is nontrivial, beta is drawn from
    it (a witness then shows up within a few trials); when it is
    trivial, beta is drawn uniformly, so a false free-extreme verdict
    would be refuted independently.

    The coupling scale alpha is floored at 1e-2 of the ambient size:
    at tiny alpha every boundary point violates feasibility by only
    O(alpha^2), which would ride inside the tolerance band and make
    the search vacuously succeed everywhere.
    """
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")
    rng = rng_from(seed)
    g, n = P.g, X.n
    complex_field = COMPLEX in (P.field, X.field)
    sub = dilation_subspace(P, X, tol)
    best = -np.inf
    witness = None
    L_X = evaluate_L(P, X)
    scale = 1.0 + X.norm()
    for t in range(trials):
        if sub.dim > 0 and t % 2 == 0:
            # real coefficients: the basis spans K as a real vector space
            c = rng.normal(size=sub.dim)
            beta = np.einsum("k,kgn->gn", c, sub.basis)
        elif complex_field:
            beta = rng.normal(size=(g, n)) + 1j * rng.normal(size=(g, n))
        else:
            beta = rng.normal(size=(g, n))
        nb = np.linalg.norm(beta)
        if nb < 1e-12:
            continue
        beta = beta / nb
        alpha = 10.0 ** rng.uniform(-2.0, 0.4) * scale
        psi = np.zeros(g) if t % 3 == 0 else rng.normal(size=g) * 0.5
        lam = _dilated_lambda_min(P, L_X, alpha * beta, psi)
        if lam > best:
            best = lam
            if lam >= -tol.feas:
                witness = {"beta": alpha * beta, "psi": psi, "lambda_min": lam}
                return SearchReport(found=True, trials=t + 1, best_violation=best, witness=witness)
    return SearchReport(found=False, trials=trials, best_violation=best, witness=None)


def _dilated_lambda_min(P: LinearPencil, L_X: np.ndarray, beta: np.ndarray, psi: np.ndarray) -> float:
    """lambda_min of L_A([[X, beta], [beta*, psi]]) via its shuffled block form."""
    m = P.m
    n = L_X.shape[0] // m
    dtype = np.result_type(P.A.entries.dtype, beta.dtype)
    B = np.zeros((m * n, m), dtype=dtype)
    for j in range(P.g):
        B += np.kron(P.A.entries[j], beta[j].reshape(n, 1))
    L_psi = np.eye(m, dtype=dtype) - np.einsum("j,jab->ab", psi, P.A.entries)
    big = np.block([[L_X, -B], [-B.conj().T, L_psi]])
    return float(np.linalg.eigvalsh(big)[0])


def refute_matrix_extreme(
    P: LinearPencil,
    X: MatrixTuple,
    trials: int = 200,
    seed: int = 0,
    tol: Tolerances = DEFAULT,
) -> SearchReport:
    """Search for a proper combination exhibiting X as non-matrix-extreme.

    Levels n <= 3 only.  At level 1 the search probes directions d with
    x +- t d both in D_A(1); a hit yields x as a strict blend of two
    distinct members.  At higher levels, a reducible X is split by an
    invariant projection; otherwise random two-term combinations are
    fitted by least squares.  found = True comes with a verified witness.
    """
    if X.n > 3:
        raise LevelTooLarge("refutation search supports n <= 3")
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")
    rng = rng_from(seed)
    if verdict.status == "Interior":
        wit = _interior_blend(P, X, rng, tol)
        if wit is not None:
            return SearchReport(found=True, trials=1, best_violation=0.0, witness=wit)
    if X.n == 1:
        return _refute_level1(P, X, trials, rng, tol)
    return _refute_higher(P, X, trials, rng, tol)


def _interior_blend(P: LinearPencil, X: MatrixTuple, rng, tol: Tolerances) -> dict | None:
    """Any interior point splits along a feasible +- direction."""
    from .sampling import random_tuple

    for _ in range(50):
        D = random_tuple(rng, X.g, X.n, X.field)
        D = MatrixTuple(D.entries / np.linalg.norm(D.entries), X.field)
        eps = 1e-3
        Xp = MatrixTuple(X.entries + eps * D.entries, X.field)
        Xm = MatrixTuple(X.entries - eps * D.entries, X.field)
        if membership(P, Xp, tol).inside and membership(P, Xm, tol).inside:
            return {"points": (Xp, Xm), "weights": (0.5, 0.5)}
    return None


def _refute_level1(P: LinearPencil, X: MatrixTuple, trials: int, rng, tol: Tolerances) -> SearchReport:
    x = X.entries[:, 0, 0].copy()
    g = P.g
    dirs = []
    if g == 1:
        dirs = [np.array([1.0])]
    elif g == 2:
        angles = np.linspace(0.0, np.pi, max(trials, 8), endpoint=False)
        dirs = [np.array([np.cos(a), np.sin(a)]) for a in angles]
    else:
        dirs = [_unit(rng.normal(size=g)) for _ in range(trials)]
    # Two gates keep curvature artifacts out: the travel must be macroscopic
    # (an extreme point on a curved face allows tiny two-sided drift within
    # the feasibility band, scaling like sqrt(band / curvature)), and both
    # endpoints must be members at a standard far tighter than the search
    # band, so a blend through a near-boundary x cannot fake a refutation.
    scale = 1.0 + float(np.linalg.norm(x))
    floor = 1e-4 * scale
    for d in dirs:
        step = _line_step(P, x, d, tol)
        back = _line_step(P, x, -d, tol)
        if step > floor and back > floor:
            y = MatrixTuple((x + step * d).reshape(g, 1, 1), X.field)
            z = MatrixTuple((x - back * d).reshape(g, 1, 1), X.field)
            lam_y = membership(P, y, tol).min_eigenvalue
            lam_z = membership(P, z, tol).min_eigenvalue
            if min(lam_y, lam_z) < -1e-9 * scale:
                continue
            wt = back / (step + back)
            blend = wt * (x + step * d) + (1.0 - wt) * (x - back * d)
            if np.linalg.norm(blend - x) <= 1e-9 * scale:
                return SearchReport(
                    found=True, trials=len(dirs), best_violation=0.0,
                    witness={"points": (y, z), "weights": (wt, 1.0 - wt)},
                )
    return SearchReport(found=False, trials=len(dirs), best_violation=-np.inf, witness=None)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _line_step(P: LinearPencil, x: np.ndarray, d: np.ndarray, tol: Tolerances) -> float:
    """Largest t with the scalar point x + t d still in D_A(1)."""
    from .solver import AffinePencil, max_step

    M0 = np.eye(P.m, dtype=P.A.entries.dtype) - np.einsum("j,jab->ab", x, P.A.entries)
    Ms = [-P.A.entries[j] for j in range(P.g)]
    try:
        return max_step(AffinePencil(M0, Ms), np.zeros(P.g), d, tol)
    except Exception:
        return 0.0


def _refute_higher(P: LinearPencil, X: MatrixTuple, trials: int, rng, tol: Tolerances) -> SearchReport:
    from .tuples import selfadjoint_commutant_basis

    n = X.n
    # a reducible point splits as a proper combination with smaller levels
    basis = selfadjoint_commutant_basis(X, tol)
    if basis.shape[0] > 1:
        c = rng.normal(size=basis.shape[0])
        S = np.einsum("k,kab->ab", c, basis)
        S = 0.5 * (S + S.conj().T)
        w, V = np.linalg.eigh(S)
        splits = np.nonzero(np.diff(w) > 1e-6 * (1.0 + w[-1] - w[0]))[0]
        if splits.size:
            cutpos = int(splits[0]) + 1
            V1, V2 = V[:, :cutpos], V[:, cutpos:]
            pts = []
            gams = []
            for Vk in (V1, V2):
                sub = np.einsum("ri,jrs,sk->jik", Vk.conj(), X.entries, Vk)
                pts.append(MatrixTuple(sub, X.field))
                gams.append(Vk.conj().T)
            comb = MatrixConvexCombination(gammas=tuple(gams), points=tuple(pts), n=n)
            if is_proper(comb, tol):
                return SearchReport(found=True, trials=1, best_violation=0.0,
                                    witness={"combination": comb})
    # random proper two-term fits at the same level
    for t in range(trials):
        Y1 = random_point(rng, P, n, where="boundary", field=X.field)
        ok, comb = _fit_two_term(P, X, Y1, rng, tol)
        if ok and not unitarily_equivalent(comb.points[0], X, tol):
            return SearchReport(found=True, trials=t + 1, best_violation=0.0,
                                witness={"combination": comb})
    return SearchReport(found=False, trials=trials, best_violation=-np.inf, witness=None)


def _fit_two_term(P: LinearPencil, X: MatrixTuple, Y1: MatrixTuple, rng, tol: Tolerances):
    """Try X = g1* Y1 g1 + g2* Y2 g2 with Y2 solved as a residual point."""
    n = X.n
    for _ in range(8):
        t = rng.uniform(0.1, 0.9)
        g1 = np.sqrt(t) * _haar(rng, n, X.field)
        g2mass = np.eye(n) - g1.conj().T @ g1
        w, V = np.linalg.eigh(g2mass)
        if float(w[0]) < 1e-10:
            continue
        g2 = (V * np.sqrt(w)) @ V.conj().T
        resid = X.entries - np.einsum("ri,jrs,sk->jik", g1.conj(), Y1.entries, g1)
        g2inv = np.linalg.inv(g2)
        Y2ent = np.einsum("ri,jrs,sk->jik", g2inv.conj(), resid, g2inv)
        Y2ent = 0.5 * (Y2ent + np.conj(np.transpose(Y2ent, (0, 2, 1))))
        Y2 = MatrixTuple(Y2ent, X.field)
        if not membership(P, Y2, tol).inside:
            continue
        comb = MatrixConvexCombination(gammas=(g1, g2), points=(Y1, Y2), n=n)
        recon = apply_combination(comb)
        if np.linalg.norm(recon.entries - X.entries) <= 1e-8 * (1.0 + X.norm()) and is_proper(comb, tol):
            return True, comb
    return False, None


def _haar(rng, n: int, field: str) -> np.ndarray:
    from .sampling import random_unitary

    return random_unitary(rng, n, field)


def verify_combination(
    comb: MatrixConvexCombination, X: MatrixTuple, tol: Tolerances = DEFAULT
) -> tuple[bool, float]:
    """Check sum gamma_i* X^i gamma_i == X; returns (ok, residual)."""
    recon = apply_combination(comb)
    resid = float(np.linalg.norm(recon.entries - X.entries))
    return resid <= tol.reconstruct * (1.0 + X.norm()), resid
