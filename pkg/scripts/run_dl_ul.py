#!/usr/bin/env python3
"""Downlink and uplink rate/EE sweeps (desk scale by default).

Writes dl.csv and ul.csv next to --outdir.  Full-scale runs from the figures
use --realizations 1000.
"""

import argparse
import pathlib

from qbf.harness import preset, run_scenario, write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--realizations", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--outdir", default=".")
    args = ap.parse_args()
    outdir = pathlib.Path(args.outdir)
    for name in ("dl", "ul"):
        cfg = preset(name, realizations=args.realizations, master_seed=args.seed)
        records = run_scenario(cfg, workers=args.workers)
        out = outdir / f"{name}.csv"
        write_csv(records, str(out))
        print(f"{name}: {len(records)} records -> {out}")


if __name__ == "__main__":
    main()
