"""Command-line interface.

Subcommands: member, classify, decompose, mconv-member, dual-check,
example, sample, oracle.  All output is JSON (stdout or --out) with
floats printed to 17 significant digits; identical argv produces
identical bytes.  Exit codes: 0 success, 1 domain error (point outside,
unbounded set, unsupported field), 2 usage or schema error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import serialize
from .catalog import get_named_point, get_named_set
from .dilation import decompose_to_free_extremes
from .errors import (
    AlreadyMaximal,
    BadNormalization,
    BlockingFailure,
    DescentFailure,
    DimensionMismatch,
    FieldUnsupported,
    FreespecError,
    IllFormedCombination,
    Infeasible,
    InfeasibleBeta,
    InvalidTuple,
    IterationCapExceeded,
    LevelTooLarge,
    NotPSD,
    NotStrictContraction,
    OutsideCube,
    OutsideDomain,
    SchemaError,
    SingularT,
    UnboundedAlpha,
    UnboundedDirection,
    UnboundedDomain,
)
from .extreme import classify
from .oracles import search_nontrivial_dilation
from .pencil import LinearPencil, mconv_membership, membership, polar_dual_check
from .sampling import random_point, rng_from
from .tolerances import DEFAULT
from .tuples import MatrixTuple

DOMAIN_ERRORS = (
    OutsideDomain,
    UnboundedDomain,
    FieldUnsupported,
    OutsideCube,
    NotStrictContraction,
    SingularT,
    UnboundedDirection,
    UnboundedAlpha,
    NotPSD,
    LevelTooLarge,
)
USAGE_ERRORS = (
    SchemaError,
    InvalidTuple,
    DimensionMismatch,
    IllFormedCombination,
    BadNormalization,
)
NUMERICAL_ERRORS = (
    DescentFailure,
    BlockingFailure,
    IterationCapExceeded,
    Infeasible,
    InfeasibleBeta,
    AlreadyMaximal,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freespec",
        description="Membership, extreme-point classification and free-extreme "
        "decomposition for free spectrahedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, point=True, set_required=True):
        p.add_argument("--set", required=set_required, metavar="NAME|FILE",
                       help="pencil: cube:g, ball:g, mdg:d,g, pauli, or a tuple JSON file")
        if point:
            p.add_argument("--point", required=True, metavar="NAME|FILE|random:n",
                           help="point: pauli, zero:n, random:n, or a tuple JSON file "
                           "(a JSON array of tuples runs as a batch)")
        p.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
        p.add_argument("--tol-feas", type=float, default=None, metavar="T",
                       help="override the feasibility tolerance")
        p.add_argument("--tol-ker", type=float, default=None, metavar="T",
                       help="override the relative kernel cutoff")
        p.add_argument("--out", default=None, metavar="PATH", help="write JSON here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="worker threads for batch point files (default 1)")
        p.add_argument("--verbose", action="store_true", help="progress notes on stderr")
        return p

    common(sub.add_parser("member", help="membership verdict for a point"))
    common(sub.add_parser("classify", help="classical/matrix/free extreme-point report"))
    common(sub.add_parser("decompose", help="matrix convex combination of free extreme points"))
    common(sub.add_parser("mconv-member", help="matrix convex hull membership of the target tuple"))
    p = common(sub.add_parser("dual-check", help="sampled polar-duality check of a target tuple"))
    p.add_argument("--samples", type=int, default=100, metavar="N",
                   help="points of the set sampled per level (default 100)")
    p = common(sub.add_parser("example", help="emit a named pencil or point as tuple JSON"),
               point=False, set_required=False)
    p.add_argument("--point", default=None, metavar="NAME",
                   help="emit this named point instead of the set's coefficient tuple")
    p = common(sub.add_parser("sample", help="emit a random point of the set as tuple JSON"),
               point=False)
    p.add_argument("--point", default="random:1", metavar="random:n",
                   help="level to sample at (default random:1)")
    p.add_argument("--where", choices=("interior", "boundary"), default="interior",
                   help="where to place the sample (default interior)")
    p = common(sub.add_parser("oracle", help="randomized search for a nontrivial dilation"))
    p.add_argument("--trials", type=int, default=10000, metavar="N",
                   help="search trials (default 10000)")
    return parser


def _tolerances(args):
    tol = DEFAULT
    if args.tol_feas is not None:
        tol = tol.with_feas(args.tol_feas)
    if args.tol_ker is not None:
        tol = tol.with_ker(args.tol_ker)
    return tol


def _load_set(args) -> LinearPencil:
    name = args.set
    if name is None:
        raise SchemaError("--set is required here")
    if os.path.exists(name):
        return LinearPencil(serialize.load_tuple(name))
    return get_named_set(name).pencil


def _load_points(args, P: LinearPencil) -> tuple[list[MatrixTuple], bool]:
    """Resolve --point; returns (points, is_batch)."""
    name = args.point
    if os.path.exists(name):
        with open(name, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{name}: invalid JSON ({exc})") from exc
        if isinstance(obj, list):
            return [serialize.tuple_from_obj(o) for o in obj], True
        return [serialize.tuple_from_obj(obj)], False
    return [get_named_point(name, P, seed=args.seed)], False


def _emit(args, obj) -> None:
    text = serialize.dump_text(obj)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(args, msg: str) -> None:
    if getattr(args, "verbose", False):
        print(f"freespec: {msg}", file=sys.stderr)


def _per_point(args, fn, points: list[MatrixTuple], batch: bool):
    """Apply fn(point, seed) over points, preserving order; maybe threaded."""
    seeds = [args.seed + 1000003 * i for i in range(len(points))]
    if batch and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(fn, points, seeds))
    else:
        results = [fn(X, s) for X, s in zip(points, seeds)]
    return results if batch else results[0]


def _cmd_member(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(X, seed):
        return serialize.verdict_to_obj(membership(P, X, tol))

    _emit(args, _per_point(args, one, points, batch))
    return 0


def _cmd_classify(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(X, seed):
        return serialize.report_to_obj(classify(P, X, tol))

    _emit(args, _per_point(args, one, points, batch))
    return 0


def _cmd_decompose(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(X, seed):
        dec = decompose_to_free_extremes(P, X, tol, seed=seed)
        _note(args, f"decomposed level-{X.n} point into {len(dec.summands)} summands "
              f"in {dec.steps} dilation steps")
        return serialize.decomposition_to_obj(dec)

    _emit(args, _per_point(args, one, points, batch))
    return 0


def _cmd_mconv_member(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(Y, seed):
        ok, margin = mconv_membership(P.A, Y, tol)
        return {"member": bool(ok), "margin": float(margin)}

    _emit(args, _per_point(args, one, points, batch))
    return 0


def _cmd_dual_check(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(Y, seed):
        ok, worst = polar_dual_check(P, Y, samples=args.samples, seed=seed, tol=tol)
        return {"ok": bool(ok), "worst_eigenvalue": float(worst), "samples": int(args.samples)}

    _emit(args, _per_point(args, one, points, batch))
    return 0


def _cmd_example(args) -> int:
    if (args.set is None) == (args.point is None):
        raise SchemaError("example needs exactly one of --set or --point")
    if args.set is not None:
        T = _load_set(args).A
    else:
        T = get_named_point(args.point, None, seed=args.seed)
    _emit(args, serialize.tuple_to_obj(T))
    return 0


def _cmd_sample(args) -> int:
    P = _load_set(args)
    kind, _, rest = args.point.partition(":")
    if kind != "random" or not rest:
        raise SchemaError(f"sample expects --point random:n, got {args.point!r}")
    try:
        n = int(rest)
    except ValueError:
        raise SchemaError(f"sample expects --point random:n, got {args.point!r}") from None
    X = random_point(rng_from(args.seed), P, n, where=args.where)
    _emit(args, serialize.tuple_to_obj(X))
    return 0


def _cmd_oracle(args) -> int:
    tol = _tolerances(args)
    P = _load_set(args)
    points, batch = _load_points(args, P)

    def one(X, seed):
        rep = search_nontrivial_dilation(P, X, trials=args.trials, seed=seed, tol=tol)
        return serialize.search_report_to_obj(rep)

    _emit(args, _per_point(args, one, points, batch))
    return 0


_COMMANDS = {
    "member": _cmd_member,
    "classify": _cmd_classify,
    "decompose": _cmd_decompose,
    "mconv-member": _cmd_mconv_member,
    "dual-check": _cmd_dual_check,
    "example": _cmd_example,
    "sample": _cmd_sample,
    "oracle": _cmd_oracle,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except USAGE_ERRORS as exc:
        print(f"freespec: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"freespec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except NUMERICAL_ERRORS as exc:
        print(f"freespec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except FreespecError as exc:
        print(f"freespec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
