"""Analog beam codebook design and per-subarray beam selection.

The receive vectors of each RF chain are restricted to Vandermonde vectors,
i.e. single steered beams.  The codebook spacing follows from the average
pointing loss of the array factor: a target mean error pins the angular
spacing via a bisection on the error integral, and the resulting minimum
beam counts are well approximated by 4 beams per subarray antenna.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .channel import ChannelTaps, steering_vector

__all__ = [
    "BeamCodebook",
    "AnalogCombiner",
    "array_factor",
    "mean_beam_error",
    "solve_beam_spacing",
    "minimum_beam_count",
    "build_codebook",
    "select_beams",
    "combine",
]


@dataclass(frozen=True)
class BeamCodebook:
    angles: tuple[float, ...]
    m_c: int


@dataclass(frozen=True, eq=False)
class AnalogCombiner:
    """Block-diagonal receive combiner; one steered beam per RF chain."""

    angles: tuple[float, ...]   # chosen beam angle per chain
    m_c: int
    matrix: np.ndarray          # (M_R, M_RFE), unit-modulus entries per block

    @property
    def m_rfe(self) -> int:
        return len(self.angles)


def array_factor(theta: float, phi_b: float, m_c: int):
    """Normalized ULA array factor magnitude at arrival theta for beam phi_b."""
    if m_c < 1:
        raise ValueError("subarray size must be >= 1")
    u = 0.5 * np.pi * np.sin(np.asarray(theta, dtype=float) - phi_b)
    den = np.sin(u)
    with np.errstate(divide="ignore", invalid="ignore"):
        af = np.abs(np.sin(m_c * u) / den) / m_c
    af = np.where(np.abs(den) < 1e-14, 1.0, af)
    return float(af) if af.ndim == 0 else af


def mean_beam_error(delta: float, m_c: int) -> float:
    """Average array-factor loss for arrivals uniform within half a beam spacing."""
    if not 0.0 < delta <= np.pi:
        raise ValueError(f"beam spacing must be in (0, pi], got {delta}")
    if m_c == 1:
        return 0.0
    val, _ = quad(lambda x: 1.0 - array_factor(x, 0.0, m_c), 0.0, delta / 2.0,
                  epsabs=1e-9, epsrel=1e-9, limit=300)
    return (2.0 / delta) * val


def solve_beam_spacing(epsilon_max: float, m_c: int) -> float:
    """Beam spacing at which the mean pointing error equals epsilon_max.

    Bisection on [1e-4, pi]; the error is monotone in the spacing.  Raises if
    the target error is not bracketed (e.g. a single-antenna subarray never
    accumulates any error).
    """
    if not 0.0 < epsilon_max < 1.0:
        raise ValueError("epsilon_max must be in (0, 1)")
    lo, hi = 1e-4, float(np.pi)
    f_lo = mean_beam_error(lo, m_c) - epsilon_max
    f_hi = mean_beam_error(hi, m_c) - epsilon_max
    if not (f_lo < 0.0 < f_hi):
        raise ValueError(f"mean error {epsilon_max} not reachable for subarray size {m_c}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = mean_beam_error(mid, m_c) - epsilon_max
        if abs(f_mid) < 1e-6:
            return mid
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def minimum_beam_count(epsilon_max: float, m_c: int) -> int:
    """Smallest codebook size covering [0, 2pi) at the target mean error."""
    return math.ceil(2.0 * np.pi / solve_beam_spacing(epsilon_max, m_c))


def build_codebook(m_c: int) -> BeamCodebook:
    """4*m_c beam angles uniform over [0, 2pi), first angle 0."""
    if m_c < 1:
        raise ValueError("subarray size must be >= 1")
    n = 4 * m_c
    return BeamCodebook(tuple(2.0 * np.pi * i / n for i in range(n)), m_c)


def _combiner_from_angles(angles, m_c: int) -> AnalogCombiner:
    m_rfe = len(angles)
    w = np.zeros((m_rfe * m_c, m_rfe), dtype=complex)
    for i, phi in enumerate(angles):
        w[i * m_c:(i + 1) * m_c, i] = steering_vector(phi, m_c)
    return AnalogCombiner(tuple(angles), m_c, w)


def select_beams(ch: ChannelTaps, m_rfe: int, m_c: int,
                 codebook: BeamCodebook) -> AnalogCombiner:
    """Pick, per RF chain, the codebook beam with the largest receive energy.

    The metric for chain i and beam w is sum_l ||w^H H_i[l]||^2 over the
    subarray rows of the taps; ties break toward the lowest codebook index.
    """
    if ch.m_r != m_rfe * m_c:
        raise ValueError(f"channel has {ch.m_r} rows, expected {m_rfe}*{m_c}")
    if codebook.m_c != m_c:
        raise ValueError("codebook built for a different subarray size")
    beams = np.stack([steering_vector(phi, m_c) for phi in codebook.angles])  # (n_cb, m_c)
    chosen = []
    for i in range(m_rfe):
        h_i = ch.taps[:, i * m_c:(i + 1) * m_c, :]              # (L, m_c, M_T)
        proj = np.einsum("jc,lct->ljt", beams.conj(), h_i)      # (L, n_cb, M_T)
        energy = np.sum(np.abs(proj) ** 2, axis=(0, 2))
        chosen.append(codebook.angles[int(np.argmax(energy))])
    return _combiner_from_angles(chosen, m_c)


def combine(w: AnalogCombiner, ch: ChannelTaps, r_noise: np.ndarray):
    """Effective channel taps and noise covariance after analog combining."""
    mat = w.matrix
    if mat.shape[0] != ch.m_r or r_noise.shape != (ch.m_r, ch.m_r):
        raise ValueError("combiner/channel/noise dimensions do not match")
    h_c = np.einsum("rk,lrt->lkt", mat.conj(), ch.taps)
    r_c = mat.conj().T @ r_noise @ mat
    return ChannelTaps(h_c), r_c
