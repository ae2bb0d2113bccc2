"""Achievable rate of the (quantized) receiver over a frequency-selective channel.

The unquantized reference pours power over all frequency bins and spatial
streams at once (waterfilling after noise whitening).  The quantized rate is
a lower bound: right-singular-vector precoding per bin, equal power over the
first j streams, and a search over j; the effective channel and noise are
rebuilt for every candidate because they depend on the transmit covariance.
All rates are per frequency bin (bps/Hz), i.e. bin sums are divided by the
bin count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_triangular

from . import aqnm
from .aqnm import NumericalError
from .beams import build_codebook, combine, select_beams
from .channel import ChannelFrequency, ChannelTaps, to_frequency
from .quant import AgcState, QuantizerSpec, agc_state, gtable, _gauss_moments

__all__ = ["RateResult", "waterfilling_rate", "quantized_rate", "hybrid_rate"]

_LOG2 = np.log(2.0)


@dataclass(frozen=True)
class RateResult:
    rate: float                      # bps/Hz, max over stream counts
    best_streams: int
    per_stream_rates: tuple[float, ...]


def _waterfill(gains: np.ndarray, budget: float) -> float:
    """sum log2(1 + g*p) maximized over p >= 0 with sum p = budget.

    Bisection on the water level; stops at an absolute power residual of
    1e-10 (scaled by the budget).
    """
    gains = gains[gains > 1e-300]
    if gains.size == 0 or budget <= 0.0:
        return 0.0
    inv = 1.0 / gains
    lo, hi = inv.min(), inv.max() + budget
    target = budget
    tol = 1e-10 * max(1.0, budget)
    for _ in range(200):
        mu = 0.5 * (lo + hi)
        used = np.sum(np.maximum(0.0, mu - inv))
        if abs(used - target) < tol:
            break
        if used < target:
            lo = mu
        else:
            hi = mu
    mu = 0.5 * (lo + hi)
    p = np.maximum(0.0, mu - inv)
    return float(np.sum(np.log1p(gains * p)) / _LOG2)


def waterfilling_rate(h_f: ChannelFrequency, r_noise: np.ndarray, p_tx: float) -> float:
    """Capacity of the unquantized system in bps/Hz.

    The noise is whitened per branch, the channel decomposed per bin, and the
    power budget (p_tx per bin on average) is allocated jointly over all
    eigenmodes of all bins.
    """
    bins = h_f.bins
    m = bins.shape[1]
    if r_noise.shape != (m, m):
        raise ValueError("noise covariance has wrong shape")
    try:
        chol = np.linalg.cholesky(r_noise)
    except np.linalg.LinAlgError as exc:
        raise ValueError("noise covariance must be positive definite") from exc
    stacked = np.moveaxis(bins, 1, 0).reshape(m, -1)
    white = solve_triangular(chol, stacked, lower=True)
    white = np.moveaxis(white.reshape(m, bins.shape[0], bins.shape[2]), 0, 1)
    sv = np.linalg.svd(white, compute_uv=False)
    rate_sum = _waterfill((sv ** 2).ravel(), p_tx * bins.shape[0])
    return rate_sum / bins.shape[0]


@dataclass(frozen=True, eq=False)
class _Precomp:
    """Per-channel quantities shared by every point of a parameter sweep."""

    h_c_f: np.ndarray       # (N_f, M, M_T) combined channel bins
    g_f: np.ndarray         # (N_f, M, r) channel times top right-singular vectors
    sv: np.ndarray          # (N_f, r) singular values
    r_uu_prefix: np.ndarray  # (r, M, M) bin-averaged signal covariance of the
                             # first k streams at unit power per stream
    s_max: int
    noise_shape: int


def _precompute(h_c: ChannelTaps, n_f: int) -> _Precomp:
    h_c_f = to_frequency(h_c, n_f).bins
    s_max = int(np.linalg.matrix_rank(h_c.tap_sum()))
    _, sv, vh = np.linalg.svd(h_c_f, full_matrices=False)
    g_f = np.einsum("fij,fkj->fik", h_c_f, vh.conj())
    outer = np.einsum("fik,fjk->kij", g_f, g_f.conj()) / n_f
    prefix = np.cumsum(outer, axis=0)
    prefix = 0.5 * (prefix + np.conj(np.swapaxes(prefix, 1, 2)))
    return _Precomp(h_c_f, g_f, sv, prefix, s_max, h_c_f.shape[1])


def _logdet_hpd(a: np.ndarray) -> np.ndarray:
    sign, val = np.linalg.slogdet(a)
    if np.any(np.real(sign) <= 0.0):
        raise NumericalError("log-det argument is not positive definite")
    return val


def _sum_log_det_gain(r_n: np.ndarray, u_f: np.ndarray) -> float:
    """sum_f log det(I + u_f^H r_n^{-1} u_f) over the bins.

    Determinant-lemma form of sum_f [log det(r_n + u_f u_f^H) - log det(r_n)];
    the per-bin determinants are of stream-count size, which keeps wide
    arrays (many antennas, few streams) cheap.
    """
    n_f, m, j = u_f.shape
    try:
        chol = cho_factor(r_n, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("effective noise covariance is not positive definite") from exc
    solved = cho_solve(chol, np.moveaxis(u_f, 0, 1).reshape(m, n_f * j))
    solved = np.moveaxis(solved.reshape(m, n_f, j), 0, 1)
    small = np.eye(j)[None, :, :] + np.einsum("fmi,fmj->fij", u_f.conj(), solved)
    return float(_logdet_hpd(0.5 * (small + np.conj(np.swapaxes(small, 1, 2)))).sum())


def _regularized(r: np.ndarray) -> np.ndarray:
    eig = np.linalg.eigvalsh(r)
    if eig[..., 0].min() <= 0.0 or eig[..., -1].max() / max(eig[..., 0].min(), 1e-300) > 1e12:
        m = r.shape[-1]
        r = r + (1e-12 * np.trace(r).real / m) * np.eye(m)
    return r


def _rates_over_streams(pre: _Precomp, r_noise_c: np.ndarray, p_tx: float,
                        spec: QuantizerSpec | None, variant: str,
                        agc: AgcState | None) -> RateResult:
    n_f = pre.h_c_f.shape[0]
    if spec is not None:
        agc = agc or agc_state(spec)
        tab = gtable(spec, agc.ratio)
        _, p_out = _gauss_moments(spec.levels, spec.thresholds, agc.ratio)
        gain = agc.gain
    rates = []
    for j in range(1, max(pre.s_max, 1) + 1):
        g_j = pre.g_f[:, :, :j]
        r_yy = (p_tx / j) * pre.r_uu_prefix[j - 1] + r_noise_c
        if spec is None:
            r_n = r_noise_c
            h_g = g_j
        else:
            d = np.real(np.diag(r_yy))
            if np.any(d <= 0.0):
                raise NumericalError("vanishing branch power")
            c = r_yy / np.sqrt(np.outer(d, d))
            t = tab(np.clip(c.real, -1.0, 1.0)) + 1j * tab(np.clip(c.imag, -1.0, 1.0))
            np.fill_diagonal(t, p_out)
            r_ee = 0.5 * (t + t.conj().T) - gain * gain * c
            r_ee = 0.5 * (r_ee + r_ee.conj().T)
            if variant == "diagonal":
                r_ee = np.diag(np.real(np.diag(r_ee))).astype(complex)
            else:
                w_e, v_e = np.linalg.eigh(r_ee)
                if w_e[0] < 0.0:
                    r_ee = (v_e * np.maximum(w_e, 0.0)) @ v_e.conj().T
                    r_ee = 0.5 * (r_ee + r_ee.conj().T)
            f = gain / np.sqrt(d)
            r_n = np.outer(f, f) * r_noise_c + r_ee
            r_n = 0.5 * (r_n + r_n.conj().T)
            h_g = f[None, :, None] * g_j
        r_n = _regularized(r_n)
        val = _sum_log_det_gain(r_n, math.sqrt(p_tx / j) * h_g)
        rates.append(float(max(val, 0.0) / (n_f * _LOG2)))
    return RateResult(max(rates), int(np.argmax(rates)) + 1, tuple(rates))


def quantized_rate(ch: ChannelTaps, w, r_noise: np.ndarray, p_tx: float,
                   spec: QuantizerSpec | None, variant: str = "exact",
                   agc: AgcState | None = None, n_f: int = 128) -> RateResult:
    """Rate lower bound of the quantized system (bps/Hz).

    ``w`` is an analog combiner or None for a fully digital receiver;
    ``spec=None`` runs the same pipeline without the quantization terms,
    i.e. equal-power precoding on the unquantized channel.
    """
    if variant not in aqnm.VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if w is not None:
        ch, r_noise = combine(w, ch, r_noise)
    pre = _precompute(ch, n_f)
    return _rates_over_streams(pre, np.asarray(r_noise, dtype=complex), p_tx,
                               spec, variant, agc)


def hybrid_rate(ch: ChannelTaps, m_rfe: int, m_c: int, r_noise: np.ndarray,
                p_tx: float, spec: QuantizerSpec | None, variant: str = "exact",
                agc: AgcState | None = None, n_f: int = 128) -> RateResult:
    """Beam selection per subarray, then the quantized rate of the combined system."""
    if ch.m_r != m_rfe * m_c:
        raise ValueError(f"channel has {ch.m_r} rows, expected {m_rfe}*{m_c}")
    w = select_beams(ch, m_rfe, m_c, build_codebook(m_c))
    return quantized_rate(ch, w, r_noise, p_tx, spec, variant, agc, n_f)
