"""Seeded random generators for tuples, pencils, and spectrahedron points.

Everything takes an explicit numpy Generator (or seed); no routine owns
hidden state.  Points of D_A are produced by ray scaling: for a
direction tuple D != 0 of a bounded pencil,

    t* = 1 / lambda_max(Lambda_A(D))

puts t* D exactly on the boundary, and u t* D with u in (0, 1) inside.
"""

from __future__ import annotations

import numpy as np

from .errors import UnboundedDirection
from .pencil import LinearPencil, evaluate_Lambda, is_bounded_level1
from .tolerances import DEFAULT, Tolerances
from .tuples import COMPLEX, REAL, MatrixTuple


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_hermitian(rng: np.random.Generator, n: int, field: str = REAL) -> np.ndarray:
    G = rng.normal(size=(n, n))
    if field == COMPLEX:
        G = G + 1j * rng.normal(size=(n, n))
    return 0.5 * (G + G.conj().T)


def random_tuple(rng: np.random.Generator, g: int, n: int, field: str = REAL, normalize: bool = False) -> MatrixTuple:
    mats = []
    for _ in range(g):
        M = random_hermitian(rng, n, field)
        if normalize:
            M = M / max(np.linalg.norm(M, 2), 1e-300)
        mats.append(M)
    return MatrixTuple(np.array(mats), field)


def random_unitary(rng: np.random.Generator, n: int, field: str = REAL) -> np.ndarray:
    G = rng.normal(size=(n, n))
    if field == COMPLEX:
        G = G + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_bounded_pencil(
    rng: np.random.Generator,
    g: int,
    m: int,
    field: str = REAL,
    min_margin: float = 0.05,
    tol: Tolerances = DEFAULT,
    attempts: int = 400,
) -> LinearPencil:
    """Rejection-sample coefficient tuples until the level-1 slice is bounded.

    min_margin additionally rejects barely-bounded pencils (recession
    probes closer than min_margin to feasibility), keeping the test
    instances well conditioned.  Note that not every (g, m) admits a
    bounded pencil: g independent coefficients must span a subspace of
    SM_m meeting the semidefinite cone only at 0, which needs
    g < m(m+1)/2.
    """
    from .solver import AffinePencil, feasibility_margin

    for _ in range(attempts):
        A = random_tuple(rng, g, m, field, normalize=True)
        P = LinearPencil(A)
        ok = True
        for i in range(g):
            for s in (1.0, -1.0):
                M0 = -s * A.entries[i]
                Ms = [-A.entries[k] for k in range(g) if k != i]
                st = feasibility_margin(AffinePencil(M0, Ms), stop_above=-min_margin / 2, tol=tol)
                if st.margin >= -min_margin:
                    ok = False
                    break
            if not ok:
                break
        if ok and is_bounded_level1(P, tol):
            return P
    raise RuntimeError(f"no bounded pencil found for g={g}, m={m}")


def boundary_scale(P: LinearPencil, D: MatrixTuple) -> float:
    """t with t D on the boundary of D_A: 1 / lambda_max(Lambda_A(D))."""
    lam = float(np.linalg.eigvalsh(evaluate_Lambda(P, D))[-1])
    if lam <= 1e-12:
        raise UnboundedDirection("direction has no positive part; pencil unbounded along it")
    return 1.0 / lam


def random_point(
    rng: np.random.Generator,
    P: LinearPencil,
    n: int,
    where: str = "interior",
    field: str | None = None,
) -> MatrixTuple:
    """Random element of D_A(n) by ray scaling a random direction."""
    field = field or P.field
    D = random_tuple(rng, P.g, n, field)
    t = boundary_scale(P, D)
    if where == "boundary":
        u = 1.0
    elif where == "interior":
        u = float(rng.uniform(0.05, 0.95))
    else:
        raise ValueError(f"where = {where!r}")
    return MatrixTuple(u * t * D.entries, field)
