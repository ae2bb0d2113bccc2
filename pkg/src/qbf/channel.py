"""Random multipath MIMO channels for uniform linear arrays.

Two models: a flat channel built from K rays that arrive simultaneously, and
a frequency-selective channel with one ray per active delay tap and an
exponential power-delay profile.  Both are normalized so that the average
receive power per antenna is one when driven with unit power per transmit
antenna, which is what ties the SNR definition to the noise variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelTaps",
    "ChannelFrequency",
    "steering_vector",
    "draw_ray_channel",
    "draw_pdp_channel",
    "to_frequency",
    "default_n_f",
]


@dataclass(frozen=True, eq=False)
class ChannelTaps:
    """Time domain channel: ``taps[l]`` is the M_R x M_T gain matrix at delay l."""

    taps: np.ndarray  # (L, M_R, M_T) complex

    @property
    def n_taps(self) -> int:
        return self.taps.shape[0]

    @property
    def m_r(self) -> int:
        return self.taps.shape[1]

    @property
    def m_t(self) -> int:
        return self.taps.shape[2]

    def tap_sum(self) -> np.ndarray:
        return self.taps.sum(axis=0)


@dataclass(frozen=True, eq=False)
class ChannelFrequency:
    """Frequency domain channel: ``bins[n]`` is the response at bin n of N_f."""

    bins: np.ndarray  # (N_f, M_R, M_T) complex

    @property
    def n_bins(self) -> int:
        return self.bins.shape[0]


def steering_vector(phi: float, m: int) -> np.ndarray:
    """Array response [1, e^{j phi}, ..., e^{j (m-1) phi}] of an m-element ULA.

    ``phi`` is the phase shift between adjacent elements; for half-wavelength
    spacing and arrival angle theta it equals pi*sin(theta).
    """
    if m < 1:
        raise ValueError("antenna count must be >= 1")
    return np.exp(1j * phi * np.arange(m))


def draw_ray_channel(k: int, m_r: int, m_t: int, rng: np.random.Generator) -> ChannelTaps:
    """Flat channel from k rays with iid uniform angles and CN(0,1) gains."""
    if k < 1:
        raise ValueError("ray count must be >= 1")
    theta_r = rng.uniform(-np.pi, np.pi, size=k)
    theta_t = rng.uniform(-np.pi, np.pi, size=k)
    alpha = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) / np.sqrt(2.0)
    a_r = np.exp(1j * np.pi * np.outer(np.arange(m_r), np.sin(theta_r)))  # (m_r, k)
    a_t = np.exp(1j * np.pi * np.outer(np.arange(m_t), np.sin(theta_t)))  # (m_t, k)
    h = (a_r * alpha) @ a_t.T / np.sqrt(k * m_t)
    return ChannelTaps(h[None, :, :])


def draw_pdp_channel(l: int, p: int, beta: float, m_r: int, m_t: int,
                     rng: np.random.Generator) -> ChannelTaps:
    """Multitap channel: p active delays out of l, exponential power profile.

    Active positions are drawn uniformly without replacement.  Tap variances
    follow exp(-beta*l) and are normalized to sum to one over the active taps,
    so the total average receive power per antenna is one.
    """
    if not 1 <= p <= l:
        raise ValueError(f"need 1 <= active taps <= {l}, got {p}")
    positions = rng.choice(l, size=p, replace=False)
    var = np.exp(-beta * positions.astype(float))
    var /= var.sum()
    theta_r = rng.uniform(-np.pi, np.pi, size=p)
    theta_t = rng.uniform(-np.pi, np.pi, size=p)
    alpha = np.sqrt(var) * (rng.standard_normal(p) + 1j * rng.standard_normal(p)) / np.sqrt(2.0)
    taps = np.zeros((l, m_r, m_t), dtype=complex)
    a_r = np.exp(1j * np.pi * np.outer(np.sin(theta_r), np.arange(m_r)))  # (p, m_r)
    a_t = np.exp(1j * np.pi * np.outer(np.sin(theta_t), np.arange(m_t)))  # (p, m_t)
    taps[positions] = alpha[:, None, None] * a_r[:, :, None] * a_t[:, None, :] / np.sqrt(m_t)
    return ChannelTaps(taps)


def to_frequency(ch: ChannelTaps, n_f: int) -> ChannelFrequency:
    """DFT of the taps onto n_f uniform frequency bins (n_f >= number of taps)."""
    if n_f < ch.n_taps:
        raise ValueError(f"need at least {ch.n_taps} bins, got {n_f}")
    return ChannelFrequency(np.fft.fft(ch.taps, n=n_f, axis=0))


def default_n_f(l: int, flat: bool = False) -> int:
    """Bin count rule: 1 bin for flat channels (all bins identical), else
    max(128, 2*l) so each bin is locally flat."""
    if flat or l == 1:
        return 1
    return max(128, 2 * l)
