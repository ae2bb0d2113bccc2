"""Scenario configuration, seeded Monte Carlo execution and CSV output.

A scenario fixes the antenna geometry, channel model, quantizer sweep and SNR
grid.  Every channel realization is drawn from an RNG stream derived from
(master seed, realization index), so results are bit-identical no matter how
the realizations are distributed over workers.  Each run also emits the
unquantized reference curve (waterfilling; on the combined system for the
hybrid architectures).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .beams import build_codebook, combine, select_beams
from .channel import ChannelTaps, default_n_f, draw_pdp_channel, draw_ray_channel
from .power import FrontendConfig, PowerTable, frontend_power
from .quant import agc_state, optimize_step
from .rate import _precompute, _rates_over_streams, _waterfill

__all__ = [
    "ConfigError",
    "ArchSpec",
    "RaysModel",
    "PdpModel",
    "ScenarioConfig",
    "RateRecord",
    "PRESETS",
    "preset",
    "calibrate_noise",
    "run_scenario",
    "write_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("scenario", "arch", "M_T", "M_R", "M_C", "bits", "variant", "agc",
               "snr_db", "rate_mean", "rate_stderr", "p_r_mw", "ee",
               "realizations", "seed")


class ConfigError(ValueError):
    """Scenario configuration rejected before any work is done."""


@dataclass(frozen=True)
class ArchSpec:
    kind: str      # "dbf" | "hbf"
    m_c: int = 1

    def __post_init__(self):
        if self.kind not in ("dbf", "hbf"):
            raise ConfigError(f"unknown architecture {self.kind!r}")
        if self.kind == "dbf" and self.m_c != 1:
            raise ConfigError("digital beamforming means one antenna per chain")
        if self.m_c < 1:
            raise ConfigError("m_c must be >= 1")


@dataclass(frozen=True)
class RaysModel:
    k: int = 7

    @property
    def n_taps(self) -> int:
        return 1


@dataclass(frozen=True)
class PdpModel:
    l: int = 32
    p: int = 16
    beta: float = 0.35

    @property
    def n_taps(self) -> int:
        return self.l


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    m_t: int
    m_r: int
    archs: tuple[ArchSpec, ...]
    channel: RaysModel | PdpModel
    bits: tuple[int, ...]
    variants: tuple[str, ...] = ("exact",)
    agc_errors: tuple[float, ...] = (0.0,)
    snr_grid_db: tuple[float, ...] = tuple(float(s) for s in range(-30, 31, 5))
    realizations: int = 100
    master_seed: int = 42
    n_f: int | None = None          # None: 1 for flat channels, max(128, 2L) else
    p_tx: float | None = None       # None: m_t
    power: PowerTable = field(default_factory=PowerTable)
    bandwidth_hz: float = 1e9
    f_s_ghz: float = 2.5

    def validate(self) -> None:
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.m_t < 1 or self.m_r < 1:
            raise ConfigError("antenna counts must be >= 1")
        if not self.archs:
            raise ConfigError("at least one architecture required")
        for arch in self.archs:
            if self.m_r % arch.m_c != 0:
                raise ConfigError(f"m_r={self.m_r} not divisible by m_c={arch.m_c}")
        if not self.bits or any(not 1 <= b <= 12 for b in self.bits):
            raise ConfigError("bits must be a non-empty list within 1..12")
        for v in self.variants:
            if v not in ("exact", "diagonal"):
                raise ConfigError(f"unknown variant {v!r}")
        for e in self.agc_errors:
            if e >= 1.0:
                raise ConfigError("AGC errors must be < 1")
        if not self.snr_grid_db or any(not math.isfinite(s) for s in self.snr_grid_db):
            raise ConfigError("SNR grid must be non-empty and finite")
        if isinstance(self.channel, PdpModel) and not 1 <= self.channel.p <= self.channel.l:
            raise ConfigError("PDP model needs 1 <= p <= l")
        if self.n_f is not None and self.n_f < self.channel.n_taps:
            raise ConfigError("n_f must be at least the number of channel taps")
        if self.bandwidth_hz <= 0 or self.f_s_ghz <= 0:
            raise ConfigError("bandwidth and sampling rate must be positive")
        if self.p_tx is not None and self.p_tx <= 0:
            raise ConfigError("p_tx must be positive")

    @property
    def effective_n_f(self) -> int:
        if self.n_f is not None:
            return self.n_f
        return default_n_f(self.channel.n_taps, flat=isinstance(self.channel, RaysModel))

    @property
    def effective_p_tx(self) -> float:
        return float(self.m_t) if self.p_tx is None else self.p_tx


@dataclass(frozen=True)
class RateRecord:
    scenario: str
    arch: str
    m_t: int
    m_r: int
    m_c: int
    bits: int                 # 0 marks the unquantized reference row
    variant: str
    agc: float
    snr_db: float
    rate_mean: float
    rate_stderr: float
    p_r_mw: float
    ee: float
    realizations: int
    seed: int


@dataclass(frozen=True)
class _Row:
    arch: ArchSpec
    bits: int
    variant: str
    agc: float
    snr_db: float


def calibrate_noise(snr_db: float) -> float:
    """Noise variance for a unit average receive power per antenna."""
    return 10.0 ** (-snr_db / 10.0)


def _grid_rows(cfg: ScenarioConfig) -> list[_Row]:
    rows = []
    for arch in cfg.archs:
        for snr in cfg.snr_grid_db:
            rows.append(_Row(arch, 0, "none", 0.0, snr))
        for b in cfg.bits:
            for variant in cfg.variants:
                for eps in cfg.agc_errors:
                    for snr in cfg.snr_grid_db:
                        rows.append(_Row(arch, b, variant, eps, snr))
    return rows


def _draw_channel(cfg: ScenarioConfig, idx: int) -> ChannelTaps:
    rng = np.random.default_rng([cfg.master_seed, idx])
    if isinstance(cfg.channel, RaysModel):
        return draw_ray_channel(cfg.channel.k, cfg.m_r, cfg.m_t, rng)
    return draw_pdp_channel(cfg.channel.l, cfg.channel.p, cfg.channel.beta,
                            cfg.m_r, cfg.m_t, rng)


def _realization_rates(cfg: ScenarioConfig, idx: int, rows: list[_Row]) -> np.ndarray:
    ch = _draw_channel(cfg, idx)
    n_f = cfg.effective_n_f
    p_tx = cfg.effective_p_tx
    per_arch = {}
    for arch in set(r.arch for r in rows):
        if arch.kind == "hbf":
            w = select_beams(ch, cfg.m_r // arch.m_c, arch.m_c, build_codebook(arch.m_c))
            ch_c, _ = combine(w, ch, np.eye(cfg.m_r, dtype=complex))
            noise_scale = float(arch.m_c)   # combiner columns have squared norm m_c
        else:
            ch_c, noise_scale = ch, 1.0
        pre = _precompute(ch_c, n_f)
        sv2 = (pre.sv ** 2).ravel()
        per_arch[arch] = (pre, sv2, noise_scale)
    out = np.empty(len(rows))
    for i, row in enumerate(rows):
        pre, sv2, noise_scale = per_arch[row.arch]
        sigma2 = calibrate_noise(row.snr_db) * noise_scale
        if row.bits == 0:
            out[i] = _waterfill(sv2 / sigma2, p_tx * n_f) / n_f
        else:
            spec = optimize_step(row.bits)
            agc = agc_state(spec, row.agc)
            r_noise = sigma2 * np.eye(pre.noise_shape, dtype=complex)
            out[i] = _rates_over_streams(pre, r_noise, p_tx, spec, row.variant, agc).rate
    return out


def _worker(args):
    cfg, idx, rows = args
    return idx, _realization_rates(cfg, idx, rows)


def run_scenario(cfg: ScenarioConfig, workers: int = 1,
                 dump_raw: str | None = None) -> list[RateRecord]:
    """Monte Carlo sweep over the scenario grid; deterministic in the seed.

    Realizations fan out over processes; the reduction is an ordered mean
    over the realization index, so worker count never changes the output.
    """
    cfg.validate()
    rows = _grid_rows(cfg)
    tasks = [(cfg, idx, rows) for idx in range(cfg.realizations)]
    if workers > 1 and cfg.realizations > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
        rates = np.stack([results[idx] for idx in range(cfg.realizations)])
    else:
        rates = np.stack([_realization_rates(cfg, idx, rows) for idx in range(cfg.realizations)])
    mean = rates.mean(axis=0)
    if cfg.realizations > 1:
        stderr = rates.std(axis=0, ddof=1) / math.sqrt(cfg.realizations)
    else:
        stderr = np.zeros_like(mean)
    if dump_raw is not None:
        _write_raw(dump_raw, cfg, rows, rates)
    records = []
    for row, m, s in zip(rows, mean, stderr):
        if row.bits == 0:
            p_r = ee = float("nan")
        else:
            fc = FrontendConfig(cfg.m_r, cfg.m_r // row.arch.m_c, row.arch.m_c,
                                row.bits, cfg.f_s_ghz)
            p_r = frontend_power(fc, cfg.power)
            ee = float(m) * cfg.bandwidth_hz / (p_r * 1e-3)
        records.append(RateRecord(cfg.name, row.arch.kind, cfg.m_t, cfg.m_r,
                                  row.arch.m_c, row.bits, row.variant, row.agc,
                                  row.snr_db, float(m), float(s), p_r, ee,
                                  cfg.realizations, cfg.master_seed))
    return records


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(float(x))  # builtin float: shortest round-trip decimal
    return str(x)


def write_csv(records: list[RateRecord], path: str) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        lines.append(",".join(_fmt(v) for v in (
            r.scenario, r.arch, r.m_t, r.m_r, r.m_c, r.bits, r.variant, r.agc,
            r.snr_db, r.rate_mean, r.rate_stderr, r.p_r_mw, r.ee,
            r.realizations, r.seed)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_raw(path: str, cfg: ScenarioConfig, rows: list[_Row], rates: np.ndarray) -> None:
    lines = ["realization,arch,M_C,bits,variant,agc,snr_db,rate"]
    for idx in range(rates.shape[0]):
        for row, val in zip(rows, rates[idx]):
            lines.append(",".join(_fmt(v) for v in (
                idx, row.arch.kind, row.arch.m_c, row.bits, row.variant,
                row.agc, row.snr_db, float(val))))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _dl_like(name: str, m_r: int, m_t: int) -> ScenarioConfig:
    return ScenarioConfig(
        name=name, m_t=m_t, m_r=m_r,
        archs=(ArchSpec("dbf"), ArchSpec("hbf", m_c=4)),
        channel=PdpModel(l=32, p=16, beta=0.35),
        bits=tuple(range(1, 9)),
    )


PRESETS = {
    "dl": lambda: _dl_like("dl", m_r=8, m_t=64),
    "ul": lambda: _dl_like("ul", m_r=64, m_t=8),
    "diagcmp32x1": lambda: ScenarioConfig(
        name="diagcmp32x1", m_t=1, m_r=32, archs=(ArchSpec("dbf"),),
        channel=RaysModel(k=7), bits=tuple(range(1, 9)),
        variants=("exact", "diagonal")),
    "diagcmp8x8": lambda: ScenarioConfig(
        name="diagcmp8x8", m_t=8, m_r=8, archs=(ArchSpec("dbf"),),
        channel=RaysModel(k=7), bits=tuple(range(1, 9)),
        variants=("exact", "diagonal")),
    "agc-siso": lambda: ScenarioConfig(
        name="agc-siso", m_t=1, m_r=1, archs=(ArchSpec("dbf"),),
        channel=PdpModel(l=32, p=16, beta=0.35), bits=(1, 2),
        agc_errors=(0.0, 0.1, -0.1, 0.2, -0.2, 0.4, -0.4, 0.8, -0.8)),
}


def preset(name: str, **overrides) -> ScenarioConfig:
    try:
        cfg = PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choices: {sorted(PRESETS)}") from None
    return replace(cfg, **overrides) if overrides else cfg
