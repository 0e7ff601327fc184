"""Monic linear pencils and free-spectrahedron membership.

The pencil with hermitian coefficients A = (A_1, ..., A_g) in SM_m^g acts
on a tuple X in SM_n^g through

    Lambda_A(X) = sum_j A_j (x) X_j          (Kronecker products)
    L_A(X)      = I_mn - Lambda_A(X)

and D_A(n) = { X : L_A(X) >= 0 }.  Membership, kernels, boundedness of
the level-1 slice (which controls boundedness at every level, since
compressions v* X v of a member stay members), matrix-convex-hull
membership through Choi matrices, and a sampling check of the polar-dual
pairing all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPSD, UnboundedDomain
from .tolerances import DEFAULT, Tolerances
from .tuples import COMPLEX, REAL, MatrixTuple, _hermitian_basis, _nullspace, _realvec


@dataclass(frozen=True)
class LinearPencil:
    """Monic pencil L_A(X) = I - sum A_j (x) X_j with hermitian A_j."""

    A: MatrixTuple

    @property
    def m(self) -> int:
        return self.A.n

    @property
    def g(self) -> int:
        return self.A.g

    @property
    def field(self) -> str:
        return self.A.field


@dataclass(frozen=True)
class MembershipVerdict:
    status: str            # "Interior" | "Boundary" | "Outside"
    min_eigenvalue: float
    kernel_dim: int

    @property
    def inside(self) -> bool:
        return self.status in ("Interior", "Boundary")


_ORDER = {"Outside": 0, "Boundary": 1, "Interior": 2}


def evaluate_Lambda(P: LinearPencil, X: MatrixTuple) -> np.ndarray:
    """sum_j A_j (x) X_j as an (mn) x (mn) hermitian matrix."""
    if P.g != X.g:
        raise DimensionMismatch(f"pencil has g = {P.g}, point has g = {X.g}")
    m, n = P.m, X.n
    dtype = np.complex128 if COMPLEX in (P.field, X.field) else np.float64
    out = np.zeros((m * n, m * n), dtype=dtype)
    for j in range(P.g):
        out += np.kron(P.A.entries[j], X.entries[j].astype(dtype))
    return out


def evaluate_L(P: LinearPencil, X: MatrixTuple) -> np.ndarray:
    """L_A(X) = I - Lambda_A(X)."""
    lam = evaluate_Lambda(P, X)
    return np.eye(lam.shape[0], dtype=lam.dtype) - lam


def membership(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT) -> MembershipVerdict:
    """Classify X against D_A by the smallest eigenvalue of L_A(X).

    Interior if lambda_min > tol.feas, Boundary if |lambda_min| <= tol.feas,
    Outside below.  kernel_dim counts eigenvalues within the kernel window
    (see kernel_basis) and is 0 for interior points.
    """
    L = evaluate_L(P, X)
    w = np.linalg.eigvalsh(L)
    lam_min = float(w[0])
    if lam_min > tol.feas:
        status, kdim = "Interior", 0
    else:
        cut = tol.ker * max(float(w[-1]), 1.0)
        kdim = int(np.sum(np.abs(w) <= cut))
        status = "Boundary" if lam_min >= -tol.feas else "Outside"
    return MembershipVerdict(status=status, min_eigenvalue=lam_min, kernel_dim=kdim)


def kernel_basis(M: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of a PSD matrix.

    Eigenvalues with |lambda| <= tol.ker * max(lambda_max, 1) count as
    kernel.  Raises NotPSD when lambda_min < -tol.feas.
    """
    w, V = np.linalg.eigh(M)
    if w.size and float(w[0]) < -tol.feas:
        raise NotPSD(f"lambda_min = {w[0]:.3e}")
    cut = tol.ker * max(float(w[-1]) if w.size else 0.0, 1.0)
    keep = np.abs(w) <= cut
    return V[:, keep]


def shuffle_indices(m: int, sizes: tuple[int, ...]) -> np.ndarray:
    """Permutation realizing the canonical shuffle for a direct sum.

    For Z = Z^1 (+) ... (+) Z^k with block sizes `sizes`, the rows of
    L_A(Z) indexed (coefficient row, summand, inner row) regroup into
    per-summand blocks: perm[new] = old with new ordering grouped by
    summand.  Then L_A(Z)[perm][:, perm] equals blkdiag(L_A(Z^i)).
    """
    n = int(sum(sizes))
    offs = np.cumsum([0] + list(sizes))
    perm = []
    for b, nb in enumerate(sizes):
        for k in range(m):
            base = k * n + offs[b]
            perm.extend(range(base, base + nb))
    return np.array(perm, dtype=int)


def is_bounded_level1(P: LinearPencil, tol: Tolerances = DEFAULT) -> bool:
    """Whether the level-1 slice D_A(1) (hence every level) is bounded.

    The recession cone of D_A(1) is { d : Lambda_A(d) <= 0 }.  It is
    trivial iff for every coordinate i and sign s the convex probe
    "Lambda_A(d) <= 0, d_i = s" is infeasible; each probe is decided by
    a feasibility margin in the remaining g - 1 variables.
    """
    from .solver import AffinePencil, feasibility_margin

    A = P.A.entries
    g, m = P.g, P.m
    for i in range(g):
        for s in (1.0, -1.0):
            M0 = -s * A[i]
            Ms = [-A[k] for k in range(g) if k != i]
            st = feasibility_margin(AffinePencil(M0, Ms), stop_above=tol.feas)
            if st.margin >= -tol.feas:
                return False
    return True


def mconv_membership(A: MatrixTuple, Y: MatrixTuple, tol: Tolerances = DEFAULT) -> tuple[bool, float]:
    """Whether Y lies in the matrix convex hull of the tuple A.

    Y in mconv(A) at level n iff there is a unital completely positive
    map Phi with Phi(A_j) = Y_j, i.e. iff the Choi matrix system

        C >= 0,  sum_k C[kk] = I_n,  sum_kl (A_j)_{kl} C[kl] = Y_j

    is feasible, with C hermitian of size mn and C[kl] its n x n blocks.
    The affine system is solved in a hermitian coordinate basis; the PSD
    condition is decided by the sup of lambda_min over the solution
    space.  Returns (verdict, margin).
    """
    from .solver import AffinePencil, feasibility_margin

    if A.g != Y.g:
        raise DimensionMismatch(f"g = {A.g} vs {Y.g}")
    m, n, g = A.n, Y.n, A.g
    field = COMPLEX if COMPLEX in (A.field, Y.field) else REAL
    big = _hermitian_basis(m * n, field)
    small = _hermitian_basis(n, field)

    rows = []
    rhs = []
    eye_n = np.eye(n)
    Aent = A.entries.astype(np.complex128 if field == COMPLEX else np.float64)
    Yent = Y.entries.astype(np.complex128 if field == COMPLEX else np.float64)

    def block_project(Mat: np.ndarray) -> list[np.ndarray]:
        """[Tr_1(C), Phi_C(A_1), ..., Phi_C(A_g)] for C = Mat."""
        C4 = Mat.reshape(m, n, m, n)
        out = [np.einsum("kakb->ab", C4)]
        for j in range(g):
            out.append(np.einsum("kl,kalb->ab", Aent[j], C4))
        return out

    targets = [eye_n] + [Yent[j] for j in range(g)]
    for H in big:
        parts = block_project(H)
        rows.append(np.concatenate([_coords(pt, small) for pt in parts]))
    E = np.array(rows).T  # equations x unknowns
    f = np.concatenate([_coords(t, small) for t in targets])

    c0, res, *_ = np.linalg.lstsq(E, f, rcond=None)
    resid = float(np.linalg.norm(E @ c0 - f))
    if resid > 1e-8 * (1.0 + float(np.linalg.norm(f))):
        return False, -np.inf
    C0 = np.einsum("i,iab->ab", c0, big)
    null = _nullspace(E, tol.rank)
    Bs = [np.einsum("i,iab->ab", null[:, k], big) for k in range(null.shape[1])]
    st = feasibility_margin(AffinePencil(C0, Bs), stop_above=tol.feas)
    return st.margin >= -tol.feas, float(st.margin)


def _coords(Mat: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Real coordinates of a hermitian matrix in an orthonormal basis."""
    return np.real(np.einsum("iab,ab->i", basis.conj(), Mat))


def polar_dual_check(
    P: LinearPencil,
    Y: MatrixTuple,
    samples: int = 100,
    seed: int = 0,
    levels: tuple[int, ...] = (1, 2),
    tol: Tolerances = DEFAULT,
) -> tuple[bool, float]:
    """Sampling check of the polar pairing L_X(Y) >= 0 for X in D_A.

    For every Y in mconv(A) and every X in the (bounded) spectrahedron of
    the pencil, I - sum X_j (x) Y_j must be PSD.  Random X are drawn by
    ray scaling from the origin at the requested levels, mixing interior
    and boundary scalings.  Returns (ok, worst lambda_min seen).
    """
    from .sampling import random_point

    if not is_bounded_level1(P, tol):
        raise UnboundedDomain("polar dual pairing needs a bounded spectrahedron")
    if P.g != Y.g:
        raise DimensionMismatch(f"g = {P.g} vs {Y.g}")
    rng = np.random.default_rng(seed)
    worst = np.inf
    for t in range(samples):
        n = int(rng.choice(levels))
        where = "boundary" if t % 2 == 0 else "interior"
        X = random_point(rng, P, n, where=where)
        XP = LinearPencil(X)
        lam = float(np.linalg.eigvalsh(evaluate_L(XP, Y))[0])
        worst = min(worst, lam)
        if lam < -tol.feas:
            return False, worst
    return True, worst
