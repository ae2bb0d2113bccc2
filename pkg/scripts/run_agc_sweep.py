#!/usr/bin/env python3
"""SISO multipath sweep of the AGC error at 2-bit resolution."""

import argparse

from qbf.harness import preset, run_scenario, write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--realizations", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="agc.csv")
    args = ap.parse_args()
    cfg = preset("agc-siso", realizations=args.realizations, master_seed=args.seed)
    records = run_scenario(cfg, workers=args.workers)
    write_csv(records, args.out)
    print(f"agc-siso: {len(records)} records -> {args.out}")


if __name__ == "__main__":
    main()
