"""Extreme-point classification through finite linear systems.

For X on the boundary of D_A with K an orthonormal basis of
ker L_A(X), each flavor of extremality is equivalent to a homogeneous
linear system having only the zero solution:

* free      -- unknown columns beta_j in M_{n,1}:
               (sum_j A_j (x) beta_j*) K = 0, plus irreducibility;
* classical -- unknown hermitian beta_j in SM_n:
               (sum_j A_j (x) beta_j) K = 0;
* matrix    -- unknown hermitian (beta_0, ..., beta_g):
               (I (x) beta_0 + sum_j A_j (x) beta_j) K = 0 together with
               trace(beta_0 + sum_j X_j beta_j) = 0.

The free system is also the defining system of the dilation subspace
{ beta : ker L_A(X) sub ker Lambda_A(beta*) }, whose dimension vanishes
exactly on direct sums of free extreme points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HierarchyViolation, OutsideDomain
from .pencil import LinearPencil, evaluate_L, membership
from .tolerances import DEFAULT, Tolerances
from .tuples import (
    COMPLEX,
    REAL,
    MatrixTuple,
    _hermitian_basis,
    _nullspace,
    _realvec,
    canonical_sign,
    irreducible,
)


@dataclass(frozen=True)
class ExtremeReport:
    classical: bool
    matrix: bool
    free: bool
    irreducible: bool
    kernel_dim: int
    dilation_dim: int
    residuals: dict


@dataclass(frozen=True)
class DilationSubspace:
    """Basis of { beta : ker L_A(X) sub ker Lambda_A(beta*) }.

    basis has shape (dim, g, n); each beta is a tuple of column vectors,
    orthonormal in the stacked real inner product.
    """

    basis: np.ndarray
    dim: int


def _kernel_of(P: LinearPencil, X: MatrixTuple, tol: Tolerances):
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")
    if verdict.status == "Interior":
        K = np.zeros((P.m * X.n, 0))
    else:
        L = evaluate_L(P, X)
        w, V = np.linalg.eigh(L)
        cut = tol.ker * max(float(w[-1]), 1.0)
        K = V[:, np.abs(w) <= cut]
    return K, verdict


def _free_system(P: LinearPencil, X: MatrixTuple, K: np.ndarray) -> np.ndarray:
    """Columns index the real coordinates of beta; rows the stacked equations."""
    m, n, g = P.m, X.n, P.g
    kd = K.shape[1]
    K3 = K.reshape(m, n, kd)
    cols = []
    units = [np.eye(n)[p] for p in range(n)]
    for j in range(g):
        for p in range(n):
            blk = P.A.entries[j] @ K3[:, p, :]
            cols.append(_realvec(blk.ravel()))
            if X.field == COMPLEX or P.field == COMPLEX:
                cols.append(_realvec((-1j * blk).ravel()))
    return np.column_stack(cols) if cols else np.zeros((m * kd, 0))


def _pencil_action_on_kernel(A_j: np.ndarray, B: np.ndarray, K3: np.ndarray) -> np.ndarray:
    """(A_j (x) B) K for K reshaped as (m, n, kd)."""
    return np.einsum("kl,rs,lsc->krc", A_j, B, K3)


def _classical_system(P: LinearPencil, X: MatrixTuple, K: np.ndarray) -> np.ndarray:
    m, n, g = P.m, X.n, P.g
    kd = K.shape[1]
    K3 = K.reshape(m, n, kd)
    field = COMPLEX if COMPLEX in (P.field, X.field) else REAL
    basis = _hermitian_basis(n, field)
    cols = []
    for j in range(g):
        for B in basis:
            cols.append(_realvec(_pencil_action_on_kernel(P.A.entries[j], B, K3).ravel()))
    return np.column_stack(cols) if cols else np.zeros((m * n * kd, 0))


def _matrix_system(P: LinearPencil, X: MatrixTuple, K: np.ndarray) -> np.ndarray:
    m, n, g = P.m, X.n, P.g
    kd = K.shape[1]
    K3 = K.reshape(m, n, kd)
    field = COMPLEX if COMPLEX in (P.field, X.field) else REAL
    basis = _hermitian_basis(n, field)
    eye_m = np.eye(m, dtype=P.A.entries.dtype)
    cols = []
    for slot in range(g + 1):
        A_j = eye_m if slot == 0 else P.A.entries[slot - 1]
        for B in basis:
            body = _realvec(_pencil_action_on_kernel(A_j, B, K3).ravel())
            if slot == 0:
                tr = np.trace(B)
            else:
                tr = np.trace(X.entries[slot - 1].conj().T @ B)
            cols.append(np.concatenate([body, [float(np.real(tr))]]))
    return np.column_stack(cols) if cols else np.zeros((m * n * kd + 1, 0))


def _null_dim(system: np.ndarray, tol: Tolerances) -> tuple[int, float]:
    """Null-space dimension and the smallest singular value of the system."""
    rows, cols = system.shape
    if cols == 0:
        return 0, np.inf
    if rows == 0 or np.linalg.norm(system) == 0.0:
        return cols, 0.0
    s = np.linalg.svd(system, compute_uv=False)
    smax = float(s[0])
    rank = int(np.sum(s > tol.rank * max(smax, 1e-300)))
    smallest = float(s[-1]) if s.size >= cols else 0.0
    return cols - rank, smallest


def dilation_subspace(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT) -> DilationSubspace:
    """Basis of the beta-tuples whose one-dilations of X can stay in D_A.

    Interior points constrain nothing (dim = n g over the reals); the
    returned basis vectors are reshaped to (g, n) column tuples.
    """
    K, _ = _kernel_of(P, X, tol)
    system = _free_system(P, X, K)
    null = _nullspace(system, tol.rank)
    dim = null.shape[1]
    if X.field == REAL and P.field == REAL:
        basis = null.T.reshape(dim, P.g, X.n) if dim else np.zeros((0, P.g, X.n))
    else:
        comp = null[0::2] + 1j * null[1::2] if null.size else null
        basis = comp.T.reshape(dim, P.g, X.n) if dim else np.zeros((0, P.g, X.n), dtype=complex)
    return DilationSubspace(basis=basis, dim=dim)


def free_extreme_test(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT) -> tuple[bool, dict]:
    """X is free extreme iff it is irreducible and its dilation subspace is 0."""
    K, verdict = _kernel_of(P, X, tol)
    if verdict.status == "Interior":
        full = X.n * P.g * (2 if COMPLEX in (P.field, X.field) else 1)
        return False, {"free": np.inf, "dilation_dim": full}
    system = _free_system(P, X, K)
    dim, smallest = _null_dim(system, tol)
    irr, _ = irreducible(X, tol)
    return (irr and dim == 0), {"free": smallest, "dilation_dim": dim}


def classical_extreme_test(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT) -> tuple[bool, float]:
    """Only the zero hermitian tuple may satisfy (sum A_j (x) beta_j) K = 0."""
    K, verdict = _kernel_of(P, X, tol)
    if verdict.status == "Interior":
        return False, np.inf
    dim, smallest = _null_dim(_classical_system(P, X, K), tol)
    return dim == 0, smallest


def matrix_extreme_test(P: LinearPencil, X: MatrixTuple, tol: Tolerances = DEFAULT) -> tuple[bool, float]:
    """Augmented system with the beta_0 slot and the trace side constraint."""
    K, verdict = _kernel_of(P, X, tol)
    if verdict.status == "Interior":
        return False, np.inf
    dim, smallest = _null_dim(_matrix_system(P, X, K), tol)
    return dim == 0, smallest


def classify(
    P: LinearPencil,
    X: MatrixTuple,
    tol: Tolerances = DEFAULT,
    conjugation_closed: bool = False,
) -> ExtremeReport:
    """Run all three extremality tests and cross-check the hierarchy.

    free => matrix => classical must hold; a violation raises
    HierarchyViolation (tolerance misconfiguration, not a property of X).
    At level 1 classical and free coincide over the reals, or whenever
    the caller declares the set closed under conjugation.
    """
    verdict = membership(P, X, tol)
    if verdict.status == "Outside":
        raise OutsideDomain(f"lambda_min = {verdict.min_eigenvalue:.3e}")
    if verdict.status == "Interior":
        irr, _ = irreducible(X, tol)
        full = X.n * P.g * (2 if COMPLEX in (P.field, X.field) else 1)
        return ExtremeReport(
            classical=False, matrix=False, free=False, irreducible=irr,
            kernel_dim=0, dilation_dim=full,
            residuals={"free": np.inf, "classical": np.inf, "matrix": np.inf},
        )
    free, info = free_extreme_test(P, X, tol)
    classical, r_cls = classical_extreme_test(P, X, tol)
    matrix, r_mat = matrix_extreme_test(P, X, tol)
    irr, _ = irreducible(X, tol)
    if (free and not matrix) or (matrix and not classical):
        raise HierarchyViolation(
            f"free={free}, matrix={matrix}, classical={classical} at kernel_dim={verdict.kernel_dim}"
        )
    both_real = P.field == REAL and X.field == REAL
    if X.n == 1 and (both_real or conjugation_closed) and classical != free:
        raise HierarchyViolation(f"level-1 classical={classical} != free={free}")
    return ExtremeReport(
        classical=classical, matrix=matrix, free=free, irreducible=irr,
        kernel_dim=verdict.kernel_dim, dilation_dim=info["dilation_dim"],
        residuals={"free": info["free"], "classical": r_cls, "matrix": r_mat},
    )
