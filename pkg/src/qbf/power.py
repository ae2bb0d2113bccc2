"""RF front-end power consumption and energy efficiency.

Component figures are taken from reported 60 GHz class hardware: a shared LO,
one direct-conversion chain per antenna (LNA, 90-degree hybrid with LO
buffer, two mixers), baseband phase shifters when analog combining is used,
and per RF chain either a VGA + ADC pair or, for 1-bit conversion, a pair of
limiting amplifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

__all__ = ["PowerTable", "FrontendConfig", "frontend_power", "energy_efficiency"]


@dataclass(frozen=True)
class PowerTable:
    """Per-component power in mW; ``adc_fom_mw_per_ghz`` is per 2^ENOB step."""

    p_lo: float = 22.5
    p_lna: float = 5.4
    p_mixer: float = 0.3
    p_hybrid: float = 3.0
    p_la: float = 0.8
    p_1bit_adc: float = 0.0
    p_ps: float = 2.0
    p_vga: float = 2.0
    adc_fom_mw_per_ghz: float = 15e-3

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"power entry {f.name} must be >= 0")


@dataclass(frozen=True)
class FrontendConfig:
    m_r: int
    m_rfe: int
    m_c: int
    bits: int
    f_s_ghz: float = 2.5

    def __post_init__(self):
        if self.m_r != self.m_rfe * self.m_c:
            raise ValueError(f"m_r={self.m_r} must equal m_rfe*m_c={self.m_rfe * self.m_c}")
        if self.bits < 1 or self.f_s_ghz <= 0:
            raise ValueError("need bits >= 1 and a positive sampling rate")

    @property
    def uses_analog_combining(self) -> bool:
        return not (self.m_rfe == self.m_r and self.m_c == 1)


def frontend_power(cfg: FrontendConfig, table: PowerTable = PowerTable()) -> float:
    """Total receiver front-end power in mW.

    The ADC term scales with the sampling rate and 2^bits (ENOB taken equal
    to the nominal resolution); 1-bit chains replace the VGA + ADC pair with
    limiting amplifiers and a flip-flop of negligible power.
    """
    p = table.p_lo
    p += cfg.m_r * (table.p_lna + table.p_hybrid + 2.0 * table.p_mixer)
    if cfg.uses_analog_combining:
        p += cfg.m_r * table.p_ps
    if cfg.bits == 1:
        p += cfg.m_rfe * 2.0 * (table.p_la + table.p_1bit_adc)
    else:
        p_adc = table.adc_fom_mw_per_ghz * cfg.f_s_ghz * 2.0 ** cfg.bits
        p += cfg.m_rfe * (2.0 * table.p_vga + 2.0 * p_adc)
    return p


def energy_efficiency(rate_bps: float, p_r_watts: float) -> float:
    """Rate divided by front-end power; bps/J when the rate is in bps."""
    if p_r_watts <= 0.0:
        raise ValueError("power must be positive")
    return rate_bps / p_r_watts
