"""Tuples of hermitian matrices and their matrix-convex algebra.

A point of a matrix convex set at level n is a g-tuple of hermitian
n x n matrices.  This module provides the carrier type plus the
operations everything else builds on: direct sums, matrix convex
combinations, irreducibility via the self-adjoint commutant, unitary
equivalence via trace words, and the (gamma* gamma, gamma* X gamma)
embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadNormalization,
    DimensionMismatch,
    IllFormedCombination,
    InvalidTuple,
)
from .tolerances import DEFAULT, Tolerances

REAL = "real"
COMPLEX = "complex"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Fix the overall phase of a vector deterministically.

    The entry of largest magnitude (first such index on ties) is made
    real and positive.  Used wherever an SVD basis vector feeds a
    deterministic choice.
    """
    flat = np.asarray(v).ravel()
    if flat.size == 0:
        return v
    idx = int(np.argmax(np.abs(flat)))
    piv = flat[idx]
    if abs(piv) < 1e-300:
        return v
    phase = piv / abs(piv)
    out = np.asarray(v) / phase
    if not np.iscomplexobj(v):
        out = out.real
    return out


@dataclass(frozen=True)
class MatrixTuple:
    """A g-tuple of hermitian n x n matrices over the real or complex field.

    entries has shape (g, n, n).  Construction symmetrizes each entry when
    its hermitian deviation is below tolerance and rejects it otherwise.
    The empty tuple (n = 0) is legal so direct sums have an identity.
    """

    entries: np.ndarray
    field: str = REAL

    def __post_init__(self):
        ent = np.asarray(self.entries)
        if ent.ndim != 3 or ent.shape[1] != ent.shape[2]:
            raise InvalidTuple(f"expected shape (g, n, n), got {ent.shape}")
        if self.field not in (REAL, COMPLEX):
            raise InvalidTuple(f"unknown field {self.field!r}")
        if self.field == REAL:
            if np.iscomplexobj(ent):
                if np.max(np.abs(ent.imag), initial=0.0) > DEFAULT.sym:
                    raise InvalidTuple("complex entries in a real tuple")
                ent = ent.real
            ent = ent.astype(np.float64, copy=True)
        else:
            ent = ent.astype(np.complex128, copy=True)
        for j in range(ent.shape[0]):
            M = ent[j]
            dev = np.linalg.norm(M - M.conj().T)
            if dev > DEFAULT.sym * (1.0 + np.linalg.norm(M)):
                raise InvalidTuple(f"entry {j} is not hermitian (deviation {dev:.3e})")
            ent[j] = 0.5 * (M + M.conj().T)
        object.__setattr__(self, "entries", _freeze(ent))

    @property
    def g(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @staticmethod
    def from_matrices(mats: Sequence[np.ndarray], field: str | None = None) -> "MatrixTuple":
        arr = np.asarray(mats)
        if field is None:
            field = COMPLEX if np.iscomplexobj(arr) and np.max(np.abs(arr.imag), initial=0.0) > 0 else REAL
        return MatrixTuple(arr, field)

    @staticmethod
    def zeros(g: int, n: int, field: str = REAL) -> "MatrixTuple":
        dtype = np.float64 if field == REAL else np.complex128
        return MatrixTuple(np.zeros((g, n, n), dtype=dtype), field)

    @staticmethod
    def empty(g: int, field: str = REAL) -> "MatrixTuple":
        return MatrixTuple.zeros(g, 0, field)

    def norm(self) -> float:
        """Frobenius norm of the stacked tuple."""
        return float(np.linalg.norm(self.entries))


@dataclass(frozen=True)
class GammaPoint:
    """A pair (gamma* gamma, gamma* X gamma) with trace(gamma* gamma) = 1."""

    mass: np.ndarray
    image: MatrixTuple

    def __post_init__(self):
        object.__setattr__(self, "mass", _freeze(np.asarray(self.mass)))


@dataclass(frozen=True)
class MatrixConvexCombination:
    """Terms (gamma_i, X^i) with sum gamma_i* gamma_i = I_n.

    gamma_i maps F^n to F^{n_i}; every gamma_i must be nonzero.
    """

    gammas: tuple
    points: tuple
    n: int

    def __post_init__(self):
        if len(self.gammas) != len(self.points) or not self.gammas:
            raise IllFormedCombination("need matching, nonempty gamma and point lists")
        gams = []
        s = None
        for gam, X in zip(self.gammas, self.points):
            gam = np.asarray(gam)
            if gam.ndim != 2 or gam.shape != (X.n, self.n):
                raise DimensionMismatch(
                    f"gamma shape {gam.shape} incompatible with point level {X.n} and target {self.n}"
                )
            if np.linalg.norm(gam) == 0.0:
                raise IllFormedCombination("zero gamma term")
            contrib = gam.conj().T @ gam
            s = contrib if s is None else s + contrib
            gams.append(_freeze(gam))
        if np.linalg.norm(s - np.eye(self.n)) > DEFAULT.comb:
            raise IllFormedCombination("sum gamma_i* gamma_i != I within tolerance")
        object.__setattr__(self, "gammas", tuple(gams))
        object.__setattr__(self, "points", tuple(self.points))


def direct_sum(X: MatrixTuple, Y: MatrixTuple) -> MatrixTuple:
    """Entrywise block-diagonal direct sum of two tuples."""
    if X.g != Y.g:
        raise DimensionMismatch(f"g = {X.g} vs {Y.g}")
    field = COMPLEX if COMPLEX in (X.field, Y.field) else REAL
    dtype = np.complex128 if field == COMPLEX else np.float64
    n = X.n + Y.n
    out = np.zeros((X.g, n, n), dtype=dtype)
    out[:, : X.n, : X.n] = X.entries
    out[:, X.n :, X.n :] = Y.entries
    return MatrixTuple(out, field)


def apply_combination(comb: MatrixConvexCombination) -> MatrixTuple:
    """Evaluate sum gamma_i* X^i gamma_i."""
    g = comb.points[0].g
    for X in comb.points:
        if X.g != g:
            raise DimensionMismatch("mixed variable counts in combination")
    field = COMPLEX if any(X.field == COMPLEX for X in comb.points) else REAL
    if any(np.iscomplexobj(gam) for gam in comb.gammas):
        field = COMPLEX
    dtype = np.complex128 if field == COMPLEX else np.float64
    out = np.zeros((g, comb.n, comb.n), dtype=dtype)
    for gam, X in zip(comb.gammas, comb.points):
        out += np.einsum("ri,jrs,sk->jik", gam.conj(), X.entries, gam)
    return MatrixTuple(out, field)


def is_proper(comb: MatrixConvexCombination, tol: Tolerances = DEFAULT) -> bool:
    """True iff every gamma_i is onto, i.e. has full row rank n_i.

    Rank is counted from singular values above tol.rank * sigma_max.
    """
    for gam in comb.gammas:
        s = np.linalg.svd(gam, compute_uv=False)
        rank = int(np.sum(s > tol.rank * s[0])) if s.size else 0
        if rank < gam.shape[0]:
            return False
    return True


def selfadjoint_commutant_basis(X: MatrixTuple, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Orthonormal basis of {S = S* : S X_j = X_j S for all j}.

    Over the reals S ranges over symmetric matrices, over the complexes
    over hermitian ones; the returned array has shape (dim, n, n).
    """
    n, g = X.n, X.g
    if n == 0:
        return np.zeros((0, 0, 0), dtype=X.entries.dtype)
    basis = _hermitian_basis(n, X.field)
    cols = []
    for B in basis:
        comm = np.einsum("ab,jbc->jac", B, X.entries) - np.einsum("jab,bc->jac", X.entries, B)
        cols.append(_realvec(comm.ravel()))
    Msys = np.column_stack(cols)
    null = _nullspace(Msys, tol.rank)
    out = np.einsum("ki,iab->kab", null.T, basis)
    return out


def irreducible(X: MatrixTuple, tol: Tolerances = DEFAULT) -> tuple[bool, int]:
    """Whether the self-adjoint commutant of X is one dimensional.

    Returns (verdict, commutant_dim).  Over the reals this is
    irreducibility with respect to real orthogonal reductions.
    """
    if X.n == 0:
        raise InvalidTuple("irreducibility of the empty tuple is undefined")
    dim = selfadjoint_commutant_basis(X, tol).shape[0]
    return dim == 1, dim


def unitarily_equivalent(X: MatrixTuple, Y: MatrixTuple, tol: Tolerances = DEFAULT) -> bool:
    """Trace-word test for simultaneous unitary (orthogonal) equivalence.

    X ~ Y iff trace w(X) = trace w(Y) for every word w in the tuple
    entries.  Words of length beyond 2 n^2 add nothing -- they already
    lie in the span of shorter ones -- so the test closes the pair
    algebra generated by {(X_j, Y_j)} under multiplication and checks
    that the functional (P, Q) -> trace P - trace Q vanishes on it.
    """
    if X.n != Y.n or X.g != Y.g:
        return False
    n = X.n
    if n == 0:
        return True
    cdtype = np.complex128 if COMPLEX in (X.field, Y.field) else np.float64
    eye = np.eye(n, dtype=cdtype)
    gens = [(X.entries[j].astype(cdtype), Y.entries[j].astype(cdtype)) for j in range(X.g)]

    def vec(P, Q):
        return np.concatenate([P.ravel(), Q.ravel()])

    ortho: list[np.ndarray] = []
    pairs: list[tuple[np.ndarray, np.ndarray]] = []

    def try_add(P, Q) -> bool:
        v = vec(P, Q)
        nv = np.linalg.norm(v)
        if nv < 1e-300:
            return False
        v = v / nv
        for b in ortho:
            v = v - (np.vdot(b, v)) * b
        res = np.linalg.norm(v)
        if res > 1e-10:
            ortho.append(v / res)
            pairs.append((P / nv, Q / nv))
            return True
        return False

    try_add(eye, eye)
    frontier = [(eye, eye)]
    while frontier and len(ortho) < 2 * n * n + 1:
        nxt = []
        for P, Q in frontier:
            for Gx, Gy in gens:
                Pn, Qn = P @ Gx, Q @ Gy
                if try_add(Pn, Qn):
                    nxt.append(pairs[-1])
        frontier = nxt

    # trace functional as a vector: trace P - trace Q = f . vec(P, Q)
    f = np.concatenate([np.eye(n, dtype=cdtype).ravel(), -np.eye(n, dtype=cdtype).ravel()])
    proj = np.array([f @ b for b in ortho])
    scale = 1.0 + max(
        float(np.max(np.abs(np.trace(X.entries, axis1=1, axis2=2)))),
        float(np.max(np.abs(np.trace(Y.entries, axis1=1, axis2=2)))),
        float(n),
    )
    return float(np.linalg.norm(proj)) <= tol.trace * scale


def gamma_embed(X: MatrixTuple, gamma: np.ndarray, tol: Tolerances = DEFAULT) -> GammaPoint:
    """Map (X, gamma) to the pair (gamma* gamma, gamma* X gamma).

    gamma must be k x n with k = X.n and trace(gamma* gamma) = 1.
    """
    gamma = np.asarray(gamma)
    if gamma.ndim != 2 or gamma.shape[0] != X.n:
        raise DimensionMismatch(f"gamma shape {gamma.shape} does not match level {X.n}")
    mass = gamma.conj().T @ gamma
    if abs(np.trace(mass).real - 1.0) > tol.comb or abs(np.trace(mass).imag) > tol.comb:
        raise BadNormalization("trace(gamma* gamma) != 1")
    field = COMPLEX if (X.field == COMPLEX or np.iscomplexobj(gamma)) else REAL
    image = np.einsum("ri,jrs,sk->jik", gamma.conj(), X.entries, gamma)
    return GammaPoint(mass=mass, image=MatrixTuple(image, field))


# ---------------------------------------------------------------------------
# shared linear-algebra helpers
# ---------------------------------------------------------------------------


def _hermitian_basis(n: int, field: str) -> np.ndarray:
    """Orthonormal (Frobenius) basis of symmetric / hermitian n x n matrices."""
    out = []
    dtype = np.float64 if field == REAL else np.complex128
    for p in range(n):
        E = np.zeros((n, n), dtype=dtype)
        E[p, p] = 1.0
        out.append(E)
    r = 1.0 / np.sqrt(2.0)
    for p in range(n):
        for q in range(p + 1, n):
            E = np.zeros((n, n), dtype=dtype)
            E[p, q] = r
            E[q, p] = r
            out.append(E)
            if field == COMPLEX:
                F = np.zeros((n, n), dtype=dtype)
                F[p, q] = 1j * r
                F[q, p] = -1j * r
                out.append(F)
    return np.array(out)


def _realvec(v: np.ndarray) -> np.ndarray:
    """Flatten a possibly complex vector to stacked real coordinates."""
    if np.iscomplexobj(v):
        return np.concatenate([v.real, v.imag])
    return v


def _nullspace(M: np.ndarray, rel_tol: float) -> np.ndarray:
    """Columns spanning the null space of M, via SVD with a relative cutoff.

    Rows of Vh beyond the numerical rank, in SVD order, with a
    deterministic sign convention.  A matrix with no rows (or all-zero)
    has the full space as its null space.
    """
    rows, cols = M.shape
    if cols == 0:
        return np.zeros((0, 0))
    if rows == 0 or np.linalg.norm(M) == 0.0:
        return np.eye(cols)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rel_tol * max(smax, 1e-300)))
    null = Vh[rank:].conj()
    return np.column_stack([canonical_sign(null[i]) for i in range(null.shape[0])]) if null.shape[0] else np.zeros((cols, 0))
