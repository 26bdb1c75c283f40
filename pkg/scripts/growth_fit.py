#!/usr/bin/env python3
"""Scan a degree range, count generating pairs, and fit quadratic growth.

Runs the classifier/oracle scan, derives f(n) = number of generating pairs
per degree, fits f(n) = (n^2 + u n + v) / q per residue class of n mod 4
with the fixed denominators q in (13, 9, 10, 7), and compares the fit
against the frozen reference coefficients.  Optionally renders the scatter
with fitted curves to SVG.

    python3 scripts/growth_fit.py --n-max 100 --out-dir results/
"""

import argparse
import pathlib
import sys
import time

from cubicpancake import cli, experiments


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--oracle", choices=experiments.ORACLE_MODES, default="auto")
    ap.add_argument("--out-dir", default=".", help="where CSV/SVG files go")
    ap.add_argument("--plot", action="store_true", help="also write fn.svg")
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.time()
    records, fcounts = experiments.scan(
        experiments.ScanConfig(4, args.n_max, args.oracle))
    bad = experiments.disagreements(records)
    print(f"scan 4..{args.n_max}: {len(records)} triples, "
          f"{len(bad)} disagreements, {time.time() - t0:.1f}s")
    if bad:
        for r in bad:
            print(f"  ({r.n},{r.m},{r.k}): classifier={r.classifier_status.value} "
                  f"oracle={r.oracle_generates}")
        return 3

    fpath = out / "fcounts.csv"
    experiments.write_fcounts_csv(fpath, fcounts)
    experiments.write_triples_csv(out / "triples.csv", records)

    window = [c for c in fcounts if c.n >= 6]
    for fit in experiments.fit_fn(window):
        u_ref, v_ref = experiments.REFERENCE_COEFFICIENTS[fit.residue]
        ref_rmse = experiments.model_rmse(window, fit.residue, u_ref, v_ref)
        print(f"n = {fit.residue} (mod 4): q={fit.q:<3} "
              f"fit u={fit.u:+.3f} v={fit.v:+.3f} rmse={fit.rmse:.3f} "
              f"({fit.count} pts); reference u={u_ref:+.1f} v={v_ref:+.1f} "
              f"rmse={ref_rmse:.3f}")

    if args.plot:
        cli.main(["plot", "--in", str(fpath), "--out", str(out / "fn.svg")])
    return 0


if __name__ == "__main__":
    sys.exit(main())
