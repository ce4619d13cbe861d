"""Command-line front end.

Subcommands reproduce the headline numbers and write stable, versioned
reports:

  verify      residual and relation check of the explicit family at t
              (hyp/ads) or of rho_lambda (hp)
  trace       per-parameter CSV of residual, rank, kernel dimension and
              spectral gap for the 102- or 138-equation system
  cohomology  exact Z^1/B^1/H^1 report as JSON, with the 12+1 splitting
              for the full adjoint targets
  cusp        classify a cusp configuration and optionally run the
              seeded perturb-project experiment (CSV + JSON summary)
  gram        the 22x22 Gram matrix with a per-pair classification

Exit codes: 0 success, 1 verification failure, 2 bad input,
3 numerical failure.  RACG_THREADS caps grid/trial parallelism; output
bytes do not depend on the thread count.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import cohomology as coh
from . import cusp as cuspmod
from .coxeter import RACG, gamma22, verify_representation
from .geometry import classify_pair_ads, classify_pair_hyp, reflection_matrix
from .halfpipe import rho_lambda
from .repvar import (IllConditioned, Lift, NoConvergence, ParameterOutOfRange,
                     build_constraints, constraint_system, gram_matrix, kernel_report,
                     residual_max, standard_lift, table_lift_exact)
from .scalars import format_scalar

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3


def _thread_count():
    try:
        return max(1, int(os.environ.get("RACG_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    n = _thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _write(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_grid(spec):
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("grid spec must be start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 0:
            raise ValueError("grid count must be nonnegative")
        if count == 0:
            return []
        if count == 1:
            return [start]
        return list(np.linspace(start, stop, count))
    return [float(x) for x in spec.split(",") if x.strip()]


# -- verify ------------------------------------------------------------------

def _verify_user_lift(args, out):
    with open(args.group_file) as fh:
        racg = RACG.from_json(fh.read())
    with open(args.lift_file) as fh:
        lift = Lift.from_json(fh.read())
    system = build_constraints(racg, lift.norm_targets)
    res = residual_max(system, lift)
    out.write(f"group: {len(racg.generators)} generators, "
              f"{len(racg.commuting_pairs)} commuting pairs\n")
    out.write(f"residual_max: {format_scalar(res)}\n")
    flift = lift.as_float()
    images = {n: reflection_matrix(flift.space, flift.vectors[n]) for n in flift.names}
    report = verify_representation(racg, images, tol=args.tol)
    out.write(f"relation_defect: {format_scalar(report.max_defect)}\n")
    for f in report.failing_relations:
        out.write(f"FAIL {f}\n")
    return EXIT_OK if (res <= args.tol and report.ok) else EXIT_VERIFY_FAIL


def cmd_verify(args):
    out = io.StringIO()
    if args.group_file or args.lift_file:
        if not (args.group_file and args.lift_file):
            raise ValueError("--group-file and --lift-file go together")
        code = _verify_user_lift(args, out)
        _write(args, out.getvalue())
        return code
    racg = gamma22()
    if args.geometry == "hp":
        lam = args.t
        rep = rho_lambda(int(lam) if float(lam).is_integer() else lam)
        report = verify_representation(racg, rep.as_isometries(), tol=args.tol)
        out.write(f"geometry: hp  lambda: {format_scalar(lam)}\n")
        out.write(f"relation_defect: {format_scalar(report.max_defect)}\n")
        for f in report.failing_relations:
            out.write(f"FAIL {f}\n")
        _write(args, out.getvalue())
        return EXIT_OK if report.ok else EXIT_VERIFY_FAIL
    lift = standard_lift(args.t, args.geometry)
    system = constraint_system(args.geometry, with_tangencies=True)
    res = residual_max(system, lift)
    out.write(f"geometry: {args.geometry}  t: {format_scalar(args.t)}\n")
    out.write(f"constraints: {len(system)}\n")
    out.write(f"residual_max: {format_scalar(res)}\n")
    images = {n: reflection_matrix(lift.space, lift.vectors[n]) for n in lift.names}
    report = verify_representation(racg, images, tol=args.tol)
    out.write(f"relation_defect: {format_scalar(report.max_defect)}\n")
    ok = res <= args.tol and report.ok
    if args.geometry == "hyp" and args.t == 1.0:
        exact = table_lift_exact().as_float()
        dev = max(float(np.max(np.abs(lift.vectors[n] - exact.vectors[n])))
                  for n in lift.names)
        out.write(f"table_deviation: {format_scalar(dev)}\n")
        ok = ok and dev <= args.tol
    for f in report.failing_relations:
        out.write(f"FAIL {f}\n")
    _write(args, out.getvalue())
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


# -- trace -------------------------------------------------------------------

def cmd_trace(args):
    grid = _parse_grid(args.grid)
    system = constraint_system(args.geometry, with_tangencies=(args.system == "g0"))

    def row(t):
        lift = standard_lift(t, args.geometry)
        res = residual_max(system, lift)
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = kernel_report(system, lift, tol=args.rank_tol)
        gap = "inf" if not np.isfinite(rep.gap_ratio) else format_scalar(rep.gap_ratio)
        return (f"{format_scalar(t)},{args.geometry},{args.system},"
                f"{format_scalar(res)},{rep.numeric_rank},{rep.kernel_dim},{gap}")

    lines = ["# coxvar trace v1",
             "t,geometry,system,residual_max,rank,kernel_dim,gap_ratio"]
    lines.extend(_ordered_map(row, grid))
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- cohomology --------------------------------------------------------------

_COH_TARGETS = {
    "r13": ("collapsed holonomy on R^{1,3}", 4),
    "so13": ("adjoint on so(1,3)", 6),
    "full-hyp": ("adjoint on so(1,4)", 10),
    "full-ads": ("adjoint on so(2,3)", 10),
    "full-hp": ("adjoint on isom(R^{1,3})", 10),
}


def cmd_cohomology(args):
    racg = gamma22()
    if args.target == "r13":
        rep = coh.rho0_rep()
        split = None
    elif args.target == "so13":
        rep = coh.so13_adjoint_rep()
        split = None
    else:
        geometry = args.target.split("-", 1)[1]
        rep = coh.adjoint_collapsed_rep(geometry)
        split = "pending"
    report = coh.cohomology_report(racg, rep)
    if split is not None:
        split = list(coh.split_h1(racg, rep, report))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "group": "gamma22",
        "rep_name": _COH_TARGETS[args.target][0],
        "dimV": rep.dimV,
        "dimZ1": report.dimZ1,
        "dimB1": report.dimB1,
        "dimH1": report.dimH1,
        "split": split,
    }
    _write(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# -- cusp --------------------------------------------------------------------

def _base_config(args):
    if args.group == "rect3":
        if args.geometry == "hyp":
            return cuspmod.base_rect_hyp(), "rect"
        if args.geometry == "ads":
            return cuspmod.base_rect_ads(), "rect"
        return cuspmod.base_rect_hp(), "rect"
    if args.geometry == "hp":
        return cuspmod.base_cube("hp", t=args.t, lam=args.lam), "cube"
    return cuspmod.base_cube(args.geometry, t=args.t), "cube"


def cmd_cusp(args):
    base, group = _base_config(args)
    klass = cuspmod.classify(args.geometry, group, base, args.class_tol)
    lines = ["# coxvar cusp v1", "trial,class,residual,iterations"]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "geometry": args.geometry,
        "group": args.group,
        "base_class": klass.name,
        "trials": 0,
        "noise": args.noise,
        "seed": args.seed,
        "histogram": {},
    }
    code = EXIT_OK
    if args.experiment and args.trials > 0:
        try:
            stats = cuspmod.rigidity_experiment(
                args.geometry, group, base, args.trials, noise=args.noise,
                seed=args.seed, tol_class=args.class_tol)
        except NoConvergence:
            return EXIT_NUMERICAL
        for rec in stats.records:
            lines.append(f"{rec.trial},{rec.klass},{format_scalar(rec.residual)},{rec.iterations}")
        summary["trials"] = args.trials
        summary["histogram"] = {k: stats.counts[k] for k in sorted(stats.counts)}
    else:
        lines.append(f"-1,{klass.name},0,0")
        summary["histogram"] = {klass.name: 1}
    _write(args, "\n".join(lines) + "\n")
    if args.summary:
        with open(args.summary, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


# -- gram --------------------------------------------------------------------

def _pair_label(geometry, lift, a, b, tol=1e-9):
    try:
        if geometry == "hyp":
            return classify_pair_hyp(lift.vectors[a], lift.vectors[b], tol).value
        return classify_pair_ads(lift.vectors[a], lift.vectors[b], tol).value
    except Exception as exc:  # mixed/degenerate pairs are reported, not fatal
        return type(exc).__name__


def cmd_gram(args):
    lift = standard_lift(args.t, args.geometry)
    gram = gram_matrix(lift)
    names = lift.names
    lines = ["# coxvar gram v1", "a,b,value,classification"]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if j < i:
                continue
            v = gram[i, j]
            if i == j:
                label = "norm"
            elif abs(v) <= 1e-9:
                label = "orthogonal"
            else:
                label = _pair_label(args.geometry, lift, a, b)
            lines.append(f"{a},{b},{format_scalar(v)},{label}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="coxvar",
                                description="reflection representation varieties of "
                                            "the 22-generator right-angled Coxeter group")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="residual + relation check of the explicit family")
    v.add_argument("--geometry", choices=("hyp", "ads", "hp"), required=True)
    v.add_argument("--t", type=float, default=0.5,
                   help="path parameter (lambda for hp)")
    v.add_argument("--tol", type=float, default=1e-12)
    v.add_argument("--group-file", help="user RACG JSON")
    v.add_argument("--lift-file", help="user lift JSON")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="kernel dimensions along a parameter grid")
    t.add_argument("--geometry", choices=("hyp", "ads"), required=True)
    t.add_argument("--system", choices=("g", "g0"), default="g0")
    t.add_argument("--grid", required=True, help="start:stop:count or comma list")
    t.add_argument("--rank-tol", type=float, default=1e-9)
    t.add_argument("--output")
    t.set_defaults(func=cmd_trace)

    c = sub.add_parser("cohomology", help="exact H^1 report")
    c.add_argument("--target", choices=tuple(_COH_TARGETS), required=True)
    c.add_argument("--output")
    c.set_defaults(func=cmd_cohomology)

    k = sub.add_parser("cusp", help="cusp classification / rigidity experiment")
    k.add_argument("--geometry", choices=("hyp", "ads", "hp"), required=True)
    k.add_argument("--group", choices=("rect3", "cube4"), required=True)
    k.add_argument("--t", type=float, default=0.4, help="cube base parameter")
    k.add_argument("--lam", type=float, default=1.0, help="hp cube base parameter")
    k.add_argument("--experiment", action="store_true")
    k.add_argument("--trials", type=int, default=1000)
    k.add_argument("--noise", type=float, default=1e-3)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--class-tol", type=float, default=1e-7)
    k.add_argument("--output")
    k.add_argument("--summary", help="write a JSON histogram here")
    k.set_defaults(func=cmd_cusp)

    g = sub.add_parser("gram", help="22x22 Gram matrix with pair classification")
    g.add_argument("--geometry", choices=("hyp", "ads"), required=True)
    g.add_argument("--t", type=float, default=0.5)
    g.add_argument("--output")
    g.set_defaults(func=cmd_gram)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParameterOutOfRange, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (NoConvergence, IllConditioned) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
