"""Uniform scalar quantizer for Gaussian inputs and its second-order statistics.

The quantizer has 2**b bins of equal width, reconstruction levels at the bin
centers and odd symmetry around zero.  The step size minimizes the mean
squared error for a unit-variance Gaussian input.  On top of the classic
distortion factor, this module provides the correlation of the quantized
outputs of two correlated Gaussian inputs, which is the ingredient that makes
the non-diagonal quantization-noise covariance tractable, plus the operating
point of an imperfectly gain-controlled ADC front-end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from scipy.special import ndtr

__all__ = [
    "QuantizerSpec",
    "AgcState",
    "GTable",
    "optimize_step",
    "quantize",
    "distortion",
    "g_function",
    "gtable",
    "agc_state",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class QuantizerSpec:
    """Uniform mid-rise quantizer, step optimized for a unit-variance Gaussian."""

    bits: int
    step: float
    levels: np.ndarray      # 2**bits reconstruction values, strictly increasing
    thresholds: np.ndarray  # 2**bits - 1 finite decision levels
    rho: float              # E[(a - Q(a))^2] for a ~ N(0, 1)

    @property
    def n_bins(self) -> int:
        return self.levels.size


@dataclass(frozen=True)
class AgcState:
    """Operating point of the quantizer behind a (possibly imperfect) AGC.

    ``epsilon`` is the relative error of the variance at the VGA output: the
    ADC sees an input of standard deviation ``ratio = sqrt(1 - epsilon)``
    relative to the design value.  ``gain`` is the exact linear-regression
    coefficient of the quantizer output on a unit-variance input at this
    operating point; with a perfect AGC it equals ``1 - rho``.  ``zeta`` is
    the output rescaling that restores input/error orthogonality.
    """

    epsilon: float
    ratio: float
    zeta: float
    gain: float

    @property
    def rho_eff(self) -> float:
        return 1.0 - self.gain


def _grid(bits: int, step: float) -> tuple[np.ndarray, np.ndarray]:
    n = 2 ** bits
    levels = (np.arange(n) - n / 2 + 0.5) * step
    thresholds = (np.arange(1, n) - n / 2) * step
    return levels, thresholds


def _phi(x: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * x * x) / _SQRT2PI


def _gauss_moments(levels, thresholds, ratio=1.0):
    """(E[a Q(a)], E[Q(a)^2]) for a ~ N(0, ratio^2), exact via Gaussian CDF."""
    edges = np.concatenate(([-np.inf], thresholds, [np.inf])) / ratio
    p_bin = np.diff(ndtr(edges))
    pdf = _phi(edges[1:-1])
    pdf_lo = np.concatenate(([0.0], pdf))
    pdf_hi = np.concatenate((pdf, [0.0]))
    m = ratio * float(np.sum(levels * (pdf_lo - pdf_hi)))
    p = float(np.sum(levels ** 2 * p_bin))
    return m, p


def _rho_of_step(bits: int, step: float) -> float:
    levels, thresholds = _grid(bits, step)
    m, p = _gauss_moments(levels, thresholds)
    return 1.0 - 2.0 * m + p


_spec_cache: dict[int, QuantizerSpec] = {}


def optimize_step(bits: int) -> QuantizerSpec:
    """Quantizer with the distortion-minimizing step for a unit Gaussian.

    Golden-section search on the step size; the distortion is unimodal in the
    step.  At the optimum E[a Q(a)] = E[Q(a)^2] holds, so 1 - rho is also the
    exact linear gain of the quantizer.
    """
    if not 1 <= bits <= 16:
        raise ValueError(f"bits must be in 1..16, got {bits}")
    spec = _spec_cache.get(bits)
    if spec is not None:
        return spec
    lo, hi = 2.0 ** (-bits) / 8.0, 8.0
    inv_gold = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_gold * (hi - lo)
    d = lo + inv_gold * (hi - lo)
    fc, fd = _rho_of_step(bits, c), _rho_of_step(bits, d)
    while hi - lo > 1e-8:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_gold * (hi - lo)
            fc = _rho_of_step(bits, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_gold * (hi - lo)
            fd = _rho_of_step(bits, d)
    step = (lo + hi) / 2.0
    levels, thresholds = _grid(bits, step)
    spec = QuantizerSpec(bits, step, levels, thresholds, _rho_of_step(bits, step))
    _spec_cache[bits] = spec
    return spec


def quantize(spec: QuantizerSpec, a):
    """Map real input(s) to reconstruction levels (intervals closed on the right)."""
    a = np.asarray(a, dtype=float)
    if np.isnan(a).any():
        raise ValueError("quantizer input contains NaN")
    n = spec.n_bins
    idx = np.ceil(a / spec.step).astype(np.int64) + n // 2 - 1
    idx = np.clip(idx, 0, n - 1)
    out = spec.levels[idx]
    return float(out) if out.ndim == 0 else out


def distortion(spec: QuantizerSpec, input_std_ratio: float = 1.0) -> float:
    """Normalized distortion E[(a - Q(a))^2] / E[a^2] for a ~ N(0, ratio^2)."""
    if not input_std_ratio > 0:
        raise ValueError("input_std_ratio must be positive")
    s = input_std_ratio
    m, p = _gauss_moments(spec.levels, spec.thresholds, s)
    return (s * s - 2.0 * m + p) / (s * s)


def g_function(spec: QuantizerSpec, c: float, input_std_ratio: float = 1.0,
               nodes: int = 64) -> float:
    """E[Q(u) Q(v)] for jointly Gaussian u, v with std ``ratio`` and correlation c.

    Cholesky substitution v = c u + sqrt(1 - c^2) w reduces the double
    expectation to a one-dimensional integral of the smooth conditional mean,
    evaluated with per-bin Gauss-Legendre quadrature.
    """
    if abs(c) > 1.0 + 1e-12:
        raise ValueError(f"correlation out of range: {c}")
    c = min(1.0, max(-1.0, c))
    s = input_std_ratio
    _, p = _gauss_moments(spec.levels, spec.thresholds, s)
    if 1.0 - abs(c) < 1e-12:
        return math.copysign(p, c)
    if c == 0.0:
        return 0.0
    t = spec.thresholds / s
    hi_edges = np.concatenate((t, [np.inf]))
    lo_edges = np.concatenate(([-np.inf], t))
    # outer integral over the bins of u, tails truncated at 9 sigma
    cuts = np.concatenate(([-9.0], np.clip(t, -9.0, 9.0), [9.0]))
    xg, wg = leggauss(nodes)
    sc = math.sqrt(1.0 - c * c)
    total = 0.0
    for q_u, a, b in zip(spec.levels, cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        x = mid + half * xg
        z_hi = ndtr((hi_edges[None, :] - c * x[:, None]) / sc)
        z_lo = ndtr((lo_edges[None, :] - c * x[:, None]) / sc)
        cond_mean = (spec.levels[None, :] * (z_hi - z_lo)).sum(axis=1)
        total += half * float(np.sum(wg * q_u * cond_mean * _phi(x)))
    return total


class GTable:
    """Tabulated output correlation c -> E[Q(u) Q(v)] with cubic interpolation.

    Knots are placed at c = sin(psi) for 2001 uniform psi in [-pi/2, pi/2],
    which keeps the interpolant accurate where the function has square-root
    behaviour near |c| = 1.  Knot values come from integrating the derivative
    of the output correlation with respect to the input correlation (a sum of
    bivariate normal densities at the threshold pairs) in the psi variable,
    where the integrand is smooth up to the endpoints.
    """

    def __init__(self, spec: QuantizerSpec, ratio: float = 1.0,
                 n_knots: int = 2001, seg_nodes: int = 4):
        if n_knots % 2 == 0:
            raise ValueError("n_knots must be odd")
        self.spec = spec
        self.ratio = ratio
        half = (n_knots + 1) // 2
        psi = np.linspace(0.0, np.pi / 2.0, half)
        t = spec.thresholds / ratio
        d2 = (t[:, None] - t[None, :]) ** 2 / 2.0
        pr = t[:, None] * t[None, :]
        mid = (psi[:-1] + psi[1:]) / 2.0
        hw = (psi[1:] - psi[:-1]) / 2.0
        xg, wg = leggauss(seg_nodes)
        nodes = (mid[:, None] + hw[:, None] * xg[None, :]).ravel()
        wts = (hw[:, None] * wg[None, :]).ravel()
        sin_n = np.sin(nodes)
        cos2_n = np.cos(nodes) ** 2
        dens = np.empty(nodes.size)
        for i in range(nodes.size):
            # exp(-(t_k^2+t_m^2-2 t_k t_m sin)/(2 cos^2)) split into a stable
            # product; the first factor is exactly 1 on the diagonal pairs.
            e1 = np.exp(-d2 / cos2_n[i]) if cos2_n[i] > 0.0 else (d2 == 0.0).astype(float)
            dens[i] = float(np.sum(e1 * np.exp(-pr / (1.0 + sin_n[i]))))
        seg = (dens * wts).reshape(-1, seg_nodes).sum(axis=1)
        vals = np.concatenate(([0.0], np.cumsum(seg))) * spec.step ** 2 / (2.0 * np.pi)
        psi_full = np.concatenate((-psi[:0:-1], psi))
        vals_full = np.concatenate((-vals[:0:-1], vals))
        self._spline = CubicSpline(psi_full, vals_full)
        self.g_one = float(vals[-1])  # == E[Q(u)^2] up to quadrature error

    def __call__(self, c):
        c = np.clip(np.asarray(c, dtype=float), -1.0, 1.0)
        return self._spline(np.arcsin(c))


class _LinearGTable:
    """Output correlation of a near-transparent quantizer: gain^2 times the input.

    Above 8 bits the error decorrelates (off-diagonal deviation from the
    linear law is bounded by the distortion factor, < 3e-5), and the exact
    table would cost (2^b)^2 density evaluations per node.  The error
    variance still enters through the diagonal, which the covariance code
    sets from the exact second moment.
    """

    def __init__(self, spec: QuantizerSpec, ratio: float):
        m, _ = _gauss_moments(spec.levels, spec.thresholds, ratio)
        self.slope = (m / ratio) ** 2

    def __call__(self, c):
        return self.slope * np.clip(np.asarray(c, dtype=float), -1.0, 1.0)


_gtable_cache: dict[tuple[int, float], GTable] = {}


def gtable(spec: QuantizerSpec, ratio: float = 1.0):
    key = (spec.bits, round(float(ratio), 12))
    tab = _gtable_cache.get(key)
    if tab is None:
        tab = GTable(spec, ratio) if spec.bits <= 8 else _LinearGTable(spec, ratio)
        _gtable_cache[key] = tab
    return tab


def agc_state(spec: QuantizerSpec, epsilon_agc: float = 0.0) -> AgcState:
    """Operating point for a VGA output power of (1 - epsilon) times the design value.

    ``zeta = E[a Q(a)] / E[Q(a)^2]`` at the mis-scaled input enforces
    orthogonality between the rescaled output and the quantization error.
    ``gain`` is the regression coefficient of the raw output on the
    unit-variance frame input; it is what the linearized receiver model uses.
    """
    if epsilon_agc >= 1.0:
        raise ValueError("epsilon_agc must be < 1 (VGA output power must stay positive)")
    ratio = math.sqrt(1.0 - epsilon_agc)
    m, p = _gauss_moments(spec.levels, spec.thresholds, ratio)
    return AgcState(epsilon=epsilon_agc, ratio=ratio, zeta=m / p, gain=m / ratio)
