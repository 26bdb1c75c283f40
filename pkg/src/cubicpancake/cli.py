"""Command line interface.

Subcommands: classify, oracle, scan, metrics, tables, conjectures, plot.
Exit codes: 0 success, 2 invalid arguments, 3 classifier/oracle disagreement
found during a scan, 4 a resource guard (degree cap or search budget) tripped.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import cayley, experiments, grouptest
from .classifier import (
    InvalidTriple,
    Status,
    Triple,
    Witness,
    build_generates_witness,
    classify,
    verdict_to_json,
    verify_certificate,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3
EXIT_RESOURCE = 4

_USER_ERRORS = (InvalidTriple, experiments.BadOracleMode,
                experiments.InsufficientData, cayley.Disconnected,
                grouptest.NotTransitive, FileNotFoundError)
_RESOURCE_ERRORS = (grouptest.DegreeTooLarge, cayley.DegreeTooLargeForBFS,
                    cayley.BudgetExceeded)


def _witness_json(w: Optional[Witness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "kind": w.kind,
        "elements": {name: list(p.images) for name, p in w.elements},
        "claims": {name: list(c) if not isinstance(c[0], tuple)
                   else [list(x) for x in c] for name, c in w.claims},
        "aux": dict(w.aux),
    }


def _cmd_classify(args: argparse.Namespace) -> int:
    t = Triple(args.n, args.m, args.k)
    v = classify(t)
    doc = verdict_to_json(t, v)
    if args.certificate:
        doc["certificate_verified"] = (
            v.certificate is not None and verify_certificate(t, v.certificate))
    if args.witness:
        doc["witness"] = (_witness_json(build_generates_witness(t))
                          if v.status is Status.GENERATES else None)
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    t = Triple(args.n, args.m, args.k)
    order = grouptest.group_order(t.generator_set())
    full = math.factorial(t.n)
    print(json.dumps({
        "n": t.n, "m": t.m, "k": t.k,
        "order": order,
        "factorial": full,
        "generates": order == full,
    }, indent=2))
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    config = experiments.ScanConfig(args.n_min, args.n_max, args.oracle,
                                    args.oracle_full_degree)
    records, fcounts = experiments.scan(config)
    experiments.write_triples_csv(args.out, records)
    if args.fcounts_out:
        experiments.write_fcounts_csv(args.fcounts_out, fcounts)
    bad = experiments.disagreements(records)
    if bad:
        for r in bad:
            print(f"disagreement at ({r.n},{r.m},{r.k}): "
                  f"classifier={r.classifier_status.value} rule={r.rule} "
                  f"oracle={r.oracle_generates}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    print(f"scanned n={args.n_min}..{args.n_max}: {len(records)} triples, "
          f"0 disagreements -> {args.out}")
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    t = Triple(args.n, args.m, args.k)
    row = cayley.graph_metrics(t, with_hamiltonian=args.hamiltonian,
                               node_budget=args.budget)
    if args.out:
        experiments.write_metrics_csv(args.out, [row])
        print(f"wrote {args.out}")
    else:
        experiments.write_metrics_csv(sys.stdout, [row])
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace) -> int:
    if args.all_n_upto:
        n_values = list(range(4, args.all_n_upto + 1))
    else:
        n_values = [args.n]
    rows, summaries = experiments.reproduce_tables(
        n_values, hamiltonian_upto=args.hamiltonian_upto,
        node_budget=args.budget)
    if args.out:
        experiments.write_metrics_csv(args.out, rows)
    else:
        experiments.write_metrics_csv(sys.stdout, rows)
    out = sys.stdout
    print(file=out)
    print("n,min_diameter,min_diameter_triples,max_diameter,max_diameter_triples,"
          "min_girth,min_girth_triples,max_girth,max_girth_triples", file=out)
    for s in summaries:
        def fmt(ts):
            return ";".join(f"({a},{b},{c})" for a, b, c in ts)
        print(f"{s.n},{s.min_diameter},{fmt(s.min_diameter_triples)},"
              f"{s.max_diameter},{fmt(s.max_diameter_triples)},"
              f"{s.min_girth},{fmt(s.min_girth_triples)},"
              f"{s.max_girth},{fmt(s.max_girth_triples)}", file=out)
    return EXIT_OK


def _cmd_conjectures(args: argparse.Namespace) -> int:
    which = {int(w) for w in args.which.split(",")} if args.which else {1, 2, 3, 4, 5}
    oracle = experiments.GenerationOracle()
    report: dict = {"n_max": args.n_max, "checks": {}}
    if 1 in which:
        _, fcounts = experiments.scan(
            experiments.ScanConfig(4, args.n_max, "auto"), oracle)
        fits = experiments.fit_fn(fcounts)
        report["checks"]["1_quadratic_growth"] = [
            {"residue": f.residue, "q": f.q, "u": round(f.u, 4),
             "v": round(f.v, 4), "rmse": round(f.rmse, 4), "points": f.count}
            for f in fits]
    if 2 in which:
        bad = experiments.check_conjecture_mod4(args.n_max, oracle)
        report["checks"]["2_shift_by_4"] = {
            "violations": [[list((a.n, a.m, a.k)), list((b.n, b.m, b.k))]
                           for a, b in bad]}
    if 3 in which:
        bad = experiments.check_conjecture_mod2(args.n_max, oracle)
        report["checks"]["3_shift_by_2"] = {
            "violations": [[list((a.n, a.m, a.k)), list((b.n, b.m, b.k))]
                           for a, b in bad]}
    if 4 in which:
        bad = experiments.check_conjecture_km_sum(args.n_max, oracle)
        report["checks"]["4_index_sum"] = {
            "violations": [list((t.n, t.m, t.k)) for t in bad]}
    if 5 in which:
        per_k = {}
        for k in (2, 3, 4, 5):
            _, observed = experiments.fk_scan(k, args.n_max, oracle)
            bound = experiments.conjectured_fk_bound(k)
            per_k[str(k)] = {"observed_max": observed, "conjectured_max": bound,
                             "within_bound": observed <= bound}
        report["checks"]["5_fk_bound"] = per_k
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_plot(args: argparse.Namespace) -> int:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fcounts = experiments.read_fcounts_csv(args.infile)
    colors = {0: "black", 1: "green", 2: "blue", 3: "red"}
    fig, ax = plt.subplots(figsize=(8, 5))
    for r in range(4):
        pts = sorted((c.n, c.f) for c in fcounts if c.residue == r)
        if pts:
            ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=14,
                       color=colors[r], label=f"n = {r} (mod 4)")
    try:
        import numpy as np
        for fit in experiments.fit_fn(fcounts):
            ns = [c.n for c in fcounts if c.residue == fit.residue]
            xs = np.linspace(min(ns), max(ns), 200)
            ax.plot(xs, [(x * x + fit.u * x + fit.v) / fit.q for x in xs],
                    color=colors[fit.residue], linewidth=1,
                    label=f"(n^2 {fit.u:+.2f} n {fit.v:+.2f}) / {fit.q}, "
                          f"rmse {fit.rmse:.2f}")
    except experiments.InsufficientData:
        pass
    ax.set_xlabel("n")
    ax.set_ylabel("number of generating pairs")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.out, format="svg")
    print(f"wrote {args.out}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicpancake",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def triple_args(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("classify", help="closed-form verdict for one triple")
    triple_args(sp)
    sp.add_argument("--witness", action="store_true",
                    help="attach the explicit generation witness if available")
    sp.add_argument("--certificate", action="store_true",
                    help="re-verify the attached certificate")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("oracle", help="exact group order for one triple")
    triple_args(sp)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("scan", help="classify a range of degrees to CSV")
    sp.add_argument("--n-min", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--oracle", choices=experiments.ORACLE_MODES, default="auto")
    sp.add_argument("--oracle-full-degree", type=int,
                    default=experiments.DEFAULT_ORACLE_FULL_DEGREE)
    sp.add_argument("--out", required=True, help="triples.csv path")
    sp.add_argument("--fcounts-out", help="optional fcounts.csv path")
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("metrics", help="diameter/girth/cycles for one graph")
    triple_args(sp)
    sp.add_argument("--hamiltonian", action="store_true")
    sp.add_argument("--budget", type=int, default=2_000_000,
                    help="node budget for the Hamiltonian search")
    sp.add_argument("--out", help="metrics.csv path (default stdout)")
    sp.set_defaults(func=_cmd_metrics)

    sp = sub.add_parser("tables", help="per-n metrics plus min/max summaries")
    sp.add_argument("--n", type=int)
    sp.add_argument("--all-n-upto", type=int)
    sp.add_argument("--hamiltonian-upto", type=int, default=7)
    sp.add_argument("--budget", type=int, default=2_000_000)
    sp.add_argument("--out", help="metrics.csv path (default stdout)")
    sp.set_defaults(func=_cmd_tables)

    sp = sub.add_parser("conjectures", help="run the empirical checks")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--which", help="comma list from 1..5 (default all)")
    sp.set_defaults(func=_cmd_conjectures)

    sp = sub.add_parser("plot", help="f(n) scatter with fitted curves (SVG)")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_plot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "tables" and not (args.n or args.all_n_upto):
        parser.error("tables requires --n or --all-n-upto")
    try:
        return args.func(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _RESOURCE_ERRORS as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
