"""Command line front-end: scenario runs, beam-count table, power breakdown.

Exit codes: 0 on success, 2 for configuration errors, 3 for numerical
failures that survived the built-in regularization.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .aqnm import NumericalError
from .beams import minimum_beam_count
from .harness import (ArchSpec, ConfigError, PdpModel, RaysModel, ScenarioConfig,
                      PowerTable, preset, run_scenario, write_csv)
from .power import FrontendConfig, frontend_power


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Accept '1..8' ranges and '1,2,4' lists."""
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in text.split(",") if t)


def _parse_float_list(text: str) -> tuple[float, ...]:
    """Accept 'start:step:stop' grids and comma lists."""
    if ":" in text:
        start, step, stop = (float(t) for t in text.split(":"))
        if step <= 0:
            raise ConfigError("grid step must be positive")
        n = int(round((stop - start) / step))
        return tuple(start + i * step for i in range(n + 1))
    return tuple(float(t) for t in text.split(",") if t)


def _config_from_file(path: str) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        archs = tuple(ArchSpec(a["kind"], a.get("m_c", 1)) for a in raw.pop("archs"))
        ch = raw.pop("channel")
        if ch["model"] == "rays":
            channel = RaysModel(k=ch.get("k", 7))
        elif ch["model"] == "pdp":
            channel = PdpModel(l=ch.get("l", 32), p=ch.get("p", 16), beta=ch.get("beta", 0.35))
        else:
            raise ConfigError(f"unknown channel model {ch['model']!r}")
        power = PowerTable(**raw.pop("power", {}))
        for key in ("bits", "variants", "agc_errors", "snr_grid_db"):
            if key in raw:
                raw[key] = tuple(raw[key])
        return ScenarioConfig(archs=archs, channel=channel, power=power, **raw)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad config file {path}: {exc}") from exc


def _cmd_run(args) -> int:
    if args.config:
        cfg = _config_from_file(args.config)
    elif args.preset:
        cfg = preset(args.preset)
    else:
        raise ConfigError("qbf run needs --preset or --config")
    overrides = {}
    if args.bits:
        overrides["bits"] = _parse_int_list(args.bits)
    if args.snr:
        overrides["snr_grid_db"] = _parse_float_list(args.snr)
    if args.variant:
        overrides["variants"] = ("exact", "diagonal") if args.variant == "both" else (args.variant,)
    if args.agc:
        overrides["agc_errors"] = _parse_float_list(args.agc)
    if args.realizations is not None:
        overrides["realizations"] = args.realizations
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.nf is not None:
        overrides["n_f"] = args.nf
    if overrides:
        cfg = replace(cfg, **overrides)
    cfg.validate()
    records = run_scenario(cfg, workers=args.workers, dump_raw=args.dump_raw)
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_beams(args) -> int:
    print(f"{'M_C':>4} {'min beams':>10} {'4*M_C':>6}")
    for m_c in _parse_int_list(args.mc):
        print(f"{m_c:>4} {minimum_beam_count(args.eps, m_c):>10} {4 * m_c:>6}")
    return 0


def _cmd_power(args) -> int:
    cfg = preset(args.preset)
    bits = _parse_int_list(args.bits) if args.bits else cfg.bits
    print(f"{'arch':>5} {'M_C':>4} {'bits':>4} {'P_R [mW]':>10}")
    for arch in cfg.archs:
        for b in bits:
            fc = FrontendConfig(cfg.m_r, cfg.m_r // arch.m_c, arch.m_c, b, cfg.f_s_ghz)
            print(f"{arch.kind:>5} {arch.m_c:>4} {b:>4} {frontend_power(fc, cfg.power):>10.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbf",
                                     description="Rate and energy efficiency of "
                                                 "quantized beamforming receivers")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Monte Carlo rate/EE sweep, writes a CSV")
    run.add_argument("--preset", choices=["dl", "ul", "diagcmp32x1", "diagcmp8x8", "agc-siso"])
    run.add_argument("--config", help="JSON scenario description (overrides --preset)")
    run.add_argument("--bits", help="ADC resolutions, e.g. 1..8 or 1,2,4")
    run.add_argument("--snr", help="SNR grid in dB, e.g. -30:5:30 or 0,10")
    run.add_argument("--variant", choices=["exact", "diagonal", "both"])
    run.add_argument("--agc", help="relative AGC errors, e.g. 0,-0.2,0.2")
    run.add_argument("--realizations", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--nf", type=int, help="frequency bin count override")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--dump-raw", help="also write per-realization rates here")
    run.add_argument("--out", default="results.csv")

    beams = sub.add_parser("beams", help="minimum beam counts for a target mean error")
    beams.add_argument("--mc", default="2,4,8,16,32", help="subarray sizes")
    beams.add_argument("--eps", type=float, default=0.1, help="target mean error")

    power = sub.add_parser("power", help="front-end power breakdown for a preset")
    power.add_argument("--preset", default="dl")
    power.add_argument("--bits")
    return parser


def _merge_negative_values(argv):
    """Let '--snr -30:5:30' style values through argparse by gluing them."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--snr", "--agc") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_negative_values(list(argv)))
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "beams":
            return _cmd_beams(args)
        return _cmd_power(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
