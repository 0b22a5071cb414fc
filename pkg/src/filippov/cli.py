"""Command-line interface.

Subcommands: classify a parameter tuple, render a phase portrait,
sweep a parameter grid to CSV (optionally with a bifurcation diagram),
verify the closed-form layer, or write the whole atlas bundle.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from ._tol import TOL_EQ
from .atlas import (
    atlas_files,
    classify_case,
    grid_to_csv,
    render_diagram,
    render_portrait,
    sweep,
    topo_signature,
    verify,
)
from .family import FoldSaddleParams, ParamOutOfRange, Tau, params_from_dict

_SIGN_CHAR = {1: "+", 0: "0", -1: "-"}


def _add_param_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--tau",
        choices=[t.value for t in Tau],
        help="upper fold kind: i (invisible) or v (visible)",
    )
    sub.add_argument("--lambda", dest="lam", type=float, help="upper fold position")
    sub.add_argument("--beta", type=float, help="saddle depth below the line")
    sub.add_argument("--mu", type=float, help="saddle unfolding parameter (default 0)")
    sub.add_argument(
        "--config",
        help="JSON file with keys tau/lambda/beta/mu; explicit flags override it",
    )


def _resolve_params(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> FoldSaddleParams:
    base: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
    if args.tau is not None:
        base["tau"] = args.tau
    if args.lam is not None:
        base["lambda"] = args.lam
    if args.beta is not None:
        base["beta"] = args.beta
    if args.mu is not None:
        base["mu"] = args.mu
    missing = [k for k in ("tau", "lambda", "beta") if k not in base]
    if missing:
        parser.error(f"missing parameters: {', '.join(missing)}")
    base.setdefault("mu", 0.0)
    try:
        return params_from_dict(base)
    except ParamOutOfRange as exc:
        parser.error(str(exc))
    raise AssertionError("unreachable")


def _refuse_existing(path: str, force: bool) -> bool:
    if os.path.exists(path) and not force:
        print(f"error: {path} exists; pass --force to overwrite", file=sys.stderr)
        return True
    return False


def _cmd_classify(parser, args) -> int:
    params = _resolve_params(parser, args)
    case = classify_case(params, tol=args.tol_eq)
    sig = topo_signature(params, tol_eq=args.tol_eq)
    print(f"case {case}")
    print(f"hash {sig.topo_hash}")
    print("tangencies " + ",".join(f"{s}{k}" for s, k in sig.tangencies))
    if sig.coincident_stability:
        print(f"coincident {sig.coincident_stability}")
    print(f"saddle {sig.saddle_position}")
    segs = ",".join(
        f"{kind}({_SIGN_CHAR[lo]}{_SIGN_CHAR[hi]})" for kind, (lo, hi) in sig.segments
    )
    print("segments " + (segs or "-"))
    print("cycles " + (",".join(f"{k}:{s}" for k, s in sig.cycles) or "-"))
    print(f"center {'yes' if sig.sigma_center else 'no'}")
    present, stab = sig.connection
    print("connection " + (f"yes:{stab}" if present else "no"))
    return 0


def _cmd_portrait(parser, args) -> int:
    params = _resolve_params(parser, args)
    out = args.out or f"portrait_{classify_case(params)}.svg"
    if _refuse_existing(out, args.force):
        return 1
    content = render_portrait(params, n_ring=args.seeds, t_max=args.t_max)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)
    print(out)
    return 0


def _cmd_sweep(parser, args) -> int:
    try:
        tau = Tau(args.tau)
    except ValueError:
        parser.error(f"bad tau {args.tau!r}")
    out = args.out or f"grid_{tau.value}_{args.mu:+.1f}.csv"
    if _refuse_existing(out, args.force):
        return 1
    if args.diagram and _refuse_existing(args.diagram, args.force):
        return 1
    try:
        grid = sweep(tau, args.mu, n=args.grid, jobs=args.jobs, tol_eq=args.tol_eq)
    except (ParamOutOfRange, ValueError) as exc:
        parser.error(str(exc))
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(grid_to_csv(grid))
    print(out)
    if args.diagram:
        with open(args.diagram, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_diagram(grid))
        print(args.diagram)
    print(
        f"{len(grid.distinct_cases())} cases, "
        f"{len(grid.distinct_hashes())} signatures"
    )
    return 0


def _cmd_verify(parser, args) -> int:
    items = verify()
    failed = False
    for item in items:
        failed = failed or item.status == "FAIL"
        print(f"{item.status:<11} {item.name:<34} residual={item.residual:.3e}  {item.detail}")
    return 1 if failed else 0


def _cmd_atlas(parser, args) -> int:
    try:
        written = atlas_files(args.out, n=args.grid, jobs=args.jobs, force=args.force)
    except FileExistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filippov",
        description="Planar piecewise-smooth systems with a fold meeting a saddle: "
        "classify, portrait, sweep, verify, atlas.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_classify = subs.add_parser(
        "classify", help="case id and topological signature of one parameter tuple"
    )
    _add_param_args(p_classify)
    p_classify.add_argument(
        "--tol-eq",
        dest="tol_eq",
        type=float,
        default=TOL_EQ,
        help="tolerance for landing exactly on a case boundary",
    )
    p_classify.set_defaults(func=_cmd_classify)

    p_portrait = subs.add_parser("portrait", help="render one phase portrait to SVG")
    _add_param_args(p_portrait)
    p_portrait.add_argument("--out", help="output path (default portrait_<case>.svg)")
    p_portrait.add_argument(
        "--seeds", type=int, default=12, help="number of ring seed trajectories"
    )
    p_portrait.add_argument(
        "--t-max",
        dest="t_max",
        type=float,
        default=60.0,
        help="time budget per seed trajectory",
    )
    p_portrait.add_argument("--force", action="store_true", help="overwrite outputs")
    p_portrait.set_defaults(func=_cmd_portrait)

    p_sweep = subs.add_parser(
        "sweep", help="classify a lambda-beta grid for one slice, write CSV"
    )
    p_sweep.add_argument("--tau", required=True, choices=[t.value for t in Tau])
    p_sweep.add_argument("--mu", required=True, type=float)
    p_sweep.add_argument("--grid", type=int, default=64, help="grid size per axis")
    p_sweep.add_argument(
        "--jobs", type=int, default=None, help="worker processes (default: cpu count)"
    )
    p_sweep.add_argument("--out", help="CSV path (default grid_<tau>_<mu>.csv)")
    p_sweep.add_argument("--diagram", help="also render the bifurcation diagram SVG here")
    p_sweep.add_argument(
        "--tol-eq",
        dest="tol_eq",
        type=float,
        default=TOL_EQ,
        help="tolerance for landing exactly on a case boundary",
    )
    p_sweep.add_argument("--force", action="store_true", help="overwrite outputs")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = subs.add_parser(
        "verify",
        help="check closed forms against numerics; printed-variant mismatches "
        "report as DISCREPANCY, implementation errors as FAIL",
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_atlas = subs.add_parser(
        "atlas", help="write all six slice grids, diagrams, and class portraits"
    )
    p_atlas.add_argument("--out", default="atlas", help="output directory")
    p_atlas.add_argument("--grid", type=int, default=64, help="grid size per axis")
    p_atlas.add_argument("--jobs", type=int, default=None)
    p_atlas.add_argument("--force", action="store_true", help="overwrite outputs")
    p_atlas.set_defaults(func=_cmd_atlas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
