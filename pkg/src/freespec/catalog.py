"""Canonical spectrahedra and dilation constructions.

The registry names resolve as  cube:g  ball:g  mdg:d,g  pauli  and feed
the command line.  Constructions:

* free_cube(g)      -- diag blocks 1 -+ x_j, so |X_j| <= 1 entrywise
                       at every level (m = 2g);
* matrix_ball(g)    -- [[1, x^T], [x, I_g]], i.e. sum X_j^2 <= I;
* mdg_pencil(d, g)  -- row contractions (T, X): sum T_i T_i* + sum X_j^2 <= I
                       in 2d + g self-adjoint coordinates (complex);
* halmos_dilation   -- the unitary reflection dilation of a cube point;
* m1g_maximal_dilation -- the explicit (S, Y) with S S* + sum Y_j^2 = I
                       extending a strict row contraction (T, X) so the
                       extension admits no further dilations;
* pauli_pair        -- (sigma_z, sigma_x), whose matrix convex hull has
                       the closed unit disk as its level-1 slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    DimensionMismatch,
    FreespecError,
    NotStrictContraction,
    OutsideCube,
    SchemaError,
    SingularT,
)
from .pencil import LinearPencil
from .tolerances import DEFAULT, Tolerances
from .tuples import COMPLEX, REAL, MatrixTuple


@dataclass(frozen=True)
class NamedSpectrahedron:
    name: str
    pencil: LinearPencil
    metadata: dict = dc_field(default_factory=dict)


def free_cube(g: int) -> NamedSpectrahedron:
    """D_A = { X : -I <= X_j <= I } via diagonal blocks (1 - x_j, 1 + x_j)."""
    m = 2 * g
    A = np.zeros((g, m, m))
    for j in range(g):
        A[j, 2 * j, 2 * j] = 1.0
        A[j, 2 * j + 1, 2 * j + 1] = -1.0
    return NamedSpectrahedron(
        name=f"cube:{g}", pencil=LinearPencil(MatrixTuple(A, REAL)), metadata={"g": g, "m": m}
    )


def matrix_ball(g: int) -> NamedSpectrahedron:
    """D_A = { X : sum X_j^2 <= I } via the block pencil [[1, x^T], [x, I]]."""
    m = g + 1
    A = np.zeros((g, m, m))
    for j in range(g):
        A[j, 0, j + 1] = -1.0
        A[j, j + 1, 0] = -1.0
    return NamedSpectrahedron(
        name=f"ball:{g}", pencil=LinearPencil(MatrixTuple(A, REAL)), metadata={"g": g, "m": m}
    )


def mdg_pencil(d: int, g: int) -> NamedSpectrahedron:
    """Row contractions sum T_i T_i* + sum X_j^2 <= I in self-adjoint coords.

    T_i = U_i + i V_i splits into 2d self-adjoint coordinates; with the
    g coordinates X_j the pencil is the (1 + d + g)-block matrix
    [[I, T_1, ..., T_d, X_1, ..., X_g], [.., I, ..]], a complex hermitian
    pencil in 2d + g variables.  The level-1 slice is the Euclidean unit
    ball in R^{2d+g}.
    """
    m = 1 + d + g
    nvars = 2 * d + g
    A = np.zeros((nvars, m, m), dtype=complex)
    for i in range(d):
        A[i, 0, 1 + i] = -1.0
        A[i, 1 + i, 0] = -1.0
        A[d + i, 0, 1 + i] = -1j
        A[d + i, 1 + i, 0] = 1j
    for j in range(g):
        A[2 * d + j, 0, 1 + d + j] = -1.0
        A[2 * d + j, 1 + d + j, 0] = -1.0
    return NamedSpectrahedron(
        name=f"mdg:{d},{g}", pencil=LinearPencil(MatrixTuple(A, COMPLEX)),
        metadata={"d": d, "g": g, "m": m},
    )


def pauli_pair() -> MatrixTuple:
    """(sigma_z, sigma_x); mconv of this pair meets level 1 in the unit disk."""
    return MatrixTuple(np.array([[[1.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [1.0, 0.0]]]), REAL)


def _psd_sqrt(M: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(M)
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ V.conj().T


def halmos_dilation(X: MatrixTuple, tol: Tolerances = DEFAULT) -> MatrixTuple:
    """Dilate each cube entry to a self-adjoint unitary.

    H_j = [[X_j, S_j], [S_j, -X_j]] with S_j = (I - X_j^2)^{1/2}; then
    H_j^2 = I, so the dilation lands on free extreme points of the cube
    once split into irreducible blocks.
    """
    n = X.n
    out = np.zeros((X.g, 2 * n, 2 * n), dtype=X.entries.dtype)
    for j in range(X.g):
        M = X.entries[j]
        if float(np.linalg.norm(M, 2)) > 1.0 + tol.feas:
            raise OutsideCube(f"entry {j} has operator norm above 1")
        S = _psd_sqrt(np.eye(n) - M @ M)
        out[j, :n, :n] = M
        out[j, :n, n:] = S
        out[j, n:, :n] = S
        out[j, n:, n:] = -M
    return MatrixTuple(out, X.field)


def row_to_selfadjoint(Ts, Xs) -> MatrixTuple:
    """Coordinates (U_i, V_i, X_j) of a row tuple for the mdg pencil."""
    Ts = [np.asarray(T, dtype=complex) for T in Ts]
    Xs = [np.asarray(Xj) for Xj in Xs]
    n = Ts[0].shape[0] if Ts else Xs[0].shape[0]
    mats = []
    for T in Ts:
        mats.append(0.5 * (T + T.conj().T))
    for T in Ts:
        mats.append((T - T.conj().T) / 2j)
    mats.extend(Xs)
    return MatrixTuple(np.array(mats, dtype=complex), COMPLEX)


def m1g_maximal_dilation(T: np.ndarray, X: MatrixTuple, tol: Tolerances = DEFAULT):
    """Extend a strict row contraction (T, X_1..X_g) to (S, Y) with
    S S* + sum Y_j^2 = I and S injective.

    With A = (I - T T* - sum X_j^2)^{1/2}, C = delta I, B = -C A (T^{-1})*,
    D = (I - B B* - C C*)^{1/2}:

        S   = [[T, A], [B, C]],
        Y_1 = [[X_1, 0], [0, D]],   Y_j = [[X_j, 0], [0, 0]]  (j >= 2),

    where delta > 0 is halved until B B* + C C* is a strict contraction.
    Compressing to the first block recovers (T, X) exactly; the defect
    identity makes the extension a row coisometry with injective S, so
    it splits into free extreme points of the row-contraction set.
    """
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if T.shape != (n, n):
        raise DimensionMismatch(f"T must be square, got {T.shape}")
    if X.g < 1 or X.n != n:
        raise DimensionMismatch("need at least one X_j of matching size")
    Xe = X.entries.astype(complex)
    R = T @ T.conj().T + np.einsum("jab,jbc->ac", Xe, Xe)
    lam_max = float(np.linalg.eigvalsh(R)[-1])
    if lam_max > 1.0 - 1e-8:
        raise NotStrictContraction(f"lambda_max(T T* + sum X^2) = {lam_max:.6f}")
    s = np.linalg.svd(T, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise SingularT("T must be invertible")

    Amat = _psd_sqrt(np.eye(n) - R)
    Tinv = np.linalg.inv(T)
    delta = float(s[-1]) / 2.0
    for _ in range(200):
        C = delta * np.eye(n)
        B = -C @ Amat @ Tinv.conj().T
        G = B @ B.conj().T + C @ C.conj().T
        if float(np.linalg.eigvalsh(G)[-1]) <= 1.0 - 1e-6:
            break
        delta *= 0.5
    else:
        raise FreespecError("could not scale the lower-left corner")
    D = _psd_sqrt(np.eye(n) - G)

    S = np.block([[T, Amat], [B, C]])
    Ys = []
    z = np.zeros((n, n))
    for j in range(X.g):
        corner = D if j == 0 else z
        Ys.append(np.block([[Xe[j], np.zeros((n, n))], [np.zeros((n, n)), corner]]))
    Y = MatrixTuple(np.array(Ys), COMPLEX)

    defect = S @ S.conj().T + np.einsum("jab,jbc->ac", Y.entries, Y.entries) - np.eye(2 * n)
    if float(np.linalg.norm(defect)) > 1e-8:
        raise FreespecError(f"defect identity violated ({np.linalg.norm(defect):.3e})")
    return S, Y


# ---------------------------------------------------------------------------
# name registry
# ---------------------------------------------------------------------------


def get_named_set(name: str) -> NamedSpectrahedron:
    """Resolve cube:g, ball:g, mdg:d,g or pauli to a pencil."""
    try:
        if name == "pauli":
            return NamedSpectrahedron(name="pauli", pencil=LinearPencil(pauli_pair()), metadata={"g": 2, "m": 2})
        kind, _, rest = name.partition(":")
        if kind == "cube":
            return free_cube(int(rest))
        if kind == "ball":
            return matrix_ball(int(rest))
        if kind == "mdg":
            d, g = (int(t) for t in rest.split(","))
            return mdg_pencil(d, g)
    except (ValueError, TypeError) as e:
        raise SchemaError(f"malformed set name {name!r}: {e}") from None
    raise SchemaError(f"unknown set name {name!r}")


def get_named_point(name: str, pencil: LinearPencil | None = None, seed: int = 0) -> MatrixTuple:
    """Resolve pauli, zero:n, or random:n (a random point of the given set)."""
    try:
        if name == "pauli":
            return pauli_pair()
        kind, _, rest = name.partition(":")
        if kind == "zero":
            if pencil is None:
                raise SchemaError("zero:n needs a set for the variable count")
            return MatrixTuple.zeros(pencil.g, int(rest), pencil.field)
        if kind == "random":
            if pencil is None:
                raise SchemaError("random:n needs a set to sample from")
            from .sampling import random_point, rng_from

            return random_point(rng_from(seed), pencil, int(rest), where="interior")
    except SchemaError:
        raise
    except (ValueError, TypeError) as e:
        raise SchemaError(f"malformed point name {name!r}: {e}") from None
    raise SchemaError(f"unknown point name {name!r}")
