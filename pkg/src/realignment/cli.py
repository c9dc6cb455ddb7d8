"""Command-line front end: ``check``, ``scan`` and ``boundary``.

Angles on the command line are given in units of pi (``0.75`` means 3pi/4).

Exit codes: 0 success, 2 bad arguments or unusable input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import criteria as C
from .bipartite import BipartiteState, InvalidStateError
from .linalg import NumericalError
from .states import FAMILIES, FamilyParams, random_separable
from .sweep import BOUNDARY_HEADER, SCAN_HEADER, Axis, BoundarySpec, ScanSpec, boundary, render, scan

EXIT_OK, EXIT_BAD_ARGS, EXIT_NUMERICAL = 0, 2, 3

STATE_CRITERIA = (C.RC, C.ZHANG, C.PPT, C.THETA, C.MIRROR_THETA, C.TRANSPOSE_THETA)


class UsageError(Exception):
    pass


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _criteria_list(text: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    unknown = [x for x in items if x not in STATE_CRITERIA]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown criteria {unknown}; choose from {list(STATE_CRITERIA)}")
    return items


def load_matrix_file(path) -> BipartiteState:
    """Read ``{"dim_a", "dim_b", "re", "im"}`` JSON with row-major entry lists."""
    data = json.loads(Path(path).read_text())
    try:
        dim_a, dim_b = int(data["dim_a"]), int(data["dim_b"])
        n = dim_a * dim_b
        re = np.asarray(data["re"], dtype=float).reshape(n, n)
        im = np.asarray(data.get("im", np.zeros(n * n)), dtype=float).reshape(n, n)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix file {path}: {exc}") from exc
    return BipartiteState(dim_a, dim_b, re + 1j * im)


def _family(args) -> FamilyParams:
    if args.family is None:
        raise UsageError("--family is required")
    return FamilyParams.parse(args.family, args.params)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    if args.matrix:
        state = load_matrix_file(args.matrix)
    elif args.random_separable:
        dim_a, dim_b, terms = (int(x) for x in args.random_separable.split(","))
        state, _ = random_separable(dim_a, dim_b, terms, args.seed)
    else:
        state = _family(args).build()
    thetas = [t * math.pi for t in args.theta_list]
    errors: list = []
    reports = C.run_all(state, thetas, tol=args.tol, criteria=args.criteria, errors=errors)
    _emit(json.dumps([r.to_dict() for r in reports], indent=1) + "\n", args.out)
    for cid, theta, msg in errors:
        print(f"error: {cid} (theta={theta}): {msg}", file=sys.stderr)
    return EXIT_NUMERICAL if errors else EXIT_OK


def cmd_scan(args) -> int:
    if not (args.axis1 and args.axis2):
        raise UsageError("scan needs --axis1 and --axis2 (name:lo:hi:steps)")
    spec = ScanSpec(_family(args), Axis.parse(args.axis1), Axis.parse(args.axis2),
                    args.criteria, args.theta_list, args.tol)
    _emit(render(scan(spec), SCAN_HEADER, args.format), args.out)
    return EXIT_OK


def cmd_boundary(args) -> int:
    if not (args.sweep and args.fixed):
        raise UsageError("boundary needs --sweep name:lo:hi[:prescan] and --fixed name:lo:hi:steps")
    if len(args.criteria) != 1:
        raise UsageError("boundary takes exactly one criterion")
    cid = args.criteria[0]
    theta = None
    if cid in C.THETA_CRITERIA:
        if len(args.theta_list) != 1:
            raise UsageError("boundary takes exactly one theta for angle-dependent criteria")
        theta = args.theta_list[0]
    spec = BoundarySpec(_family(args), Axis.parse(args.sweep, steps_required=False), Axis.parse(args.fixed),
                        cid, theta, args.bisect_tol, args.max_iter, args.tol)
    _emit(render(boundary(spec), BOUNDARY_HEADER, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("params", nargs="*", metavar="key=value",
                        help="family parameters; a value may reference another as e.g. r=0.5*s")
    common.add_argument("--family", choices=sorted(FAMILIES))
    common.add_argument("--theta-list", type=_float_list, default=(0.0, 0.25, 0.5, 0.75, 1.0),
                        help="angles in units of pi, comma-separated")
    common.add_argument("--criteria", type=_criteria_list, default=(C.RC, C.ZHANG, C.PPT, C.THETA, C.TRANSPOSE_THETA))
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, default=C.DEFAULT_TOL, help="violation tolerance on the margin")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="realign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the criterion battery on one state")
    p.add_argument("--matrix", help="JSON file with dim_a, dim_b, re, im")
    p.add_argument("--random-separable", metavar="DA,DB,TERMS", help="random separable mixture (uses --seed)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="evaluate criteria on a two-parameter grid")
    p.add_argument("--axis1", metavar="NAME:LO:HI:STEPS")
    p.add_argument("--axis2", metavar="NAME:LO:HI:STEPS")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("boundary", parents=[common], help="bisect detection boundaries")
    p.add_argument("--sweep", metavar="NAME:LO:HI[:PRESCAN]")
    p.add_argument("--fixed", metavar="NAME:LO:HI:STEPS")
    p.add_argument("--bisect-tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=60)
    p.set_defaults(func=cmd_boundary)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, InvalidStateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
