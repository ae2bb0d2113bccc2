"""Linearized model of the quantized receiver.

The quantizer output is decomposed into a scaled copy of its Gaussian input
plus an uncorrelated error term.  Working in the per-branch normalized frame
(every branch scaled to unit variance by the AGC), the full output covariance
follows entrywise from the scalar output-correlation function, which yields
the error covariance including its off-diagonal entries.  The diagonal-only
variant discards those off-diagonal entries, as earlier models did.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelFrequency
from .quant import AgcState, QuantizerSpec, _gauss_moments, agc_state, gtable

__all__ = [
    "NumericalError",
    "EffectiveSystem",
    "receive_covariance",
    "bussgang_gain",
    "quantized_covariance_T",
    "error_covariance",
    "effective_system",
]

VARIANTS = ("exact", "diagonal")


class NumericalError(RuntimeError):
    """Conditioning failure that survived the built-in regularization."""


@dataclass(frozen=True, eq=False)
class EffectiveSystem:
    """Per-bin channel and broadband noise covariance seen after quantization."""

    h_f: np.ndarray          # (N_f, M, M_T) effective channel per bin
    r_noise_eff: np.ndarray  # (M, M) Hermitian PSD
    f_gain: np.ndarray       # (M,) positive diagonal of the linear gain
    r_ee: np.ndarray         # (M, M) quantization error covariance


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def receive_covariance(h_f: ChannelFrequency, r_x_f: np.ndarray,
                       r_noise: np.ndarray, w: np.ndarray | None = None) -> np.ndarray:
    """Covariance of the (optionally combined) receive signal.

    ``r_x_f`` holds one transmit covariance per frequency bin; the band
    integral becomes the average over bins, so the result is a per-sample
    covariance that does not grow with the bin count.
    """
    bins = h_f.bins
    if r_x_f.shape[0] != bins.shape[0]:
        raise ValueError("bin count mismatch between channel and transmit covariance")
    if r_noise.shape != (bins.shape[1], bins.shape[1]):
        raise ValueError("noise covariance has wrong shape")
    r_u = np.einsum("fij,fjk,flk->il", bins, r_x_f, bins.conj()) / bins.shape[0]
    r_y = r_u + r_noise
    if w is not None:
        r_y = w.conj().T @ r_y @ w
    return _hermitize(r_y)


def bussgang_gain(r_yy: np.ndarray, rho: float) -> np.ndarray:
    """Diagonal of the linear gain matrix, (1 - rho) / sqrt(branch power)."""
    d = np.real(np.diag(r_yy))
    if np.any(d <= 0.0):
        raise NumericalError("receive covariance has a non-positive diagonal entry")
    return (1.0 - rho) / np.sqrt(d)


def _unit_correlation(r_yy: np.ndarray) -> np.ndarray:
    d = np.real(np.diag(r_yy))
    if np.any(d <= 0.0):
        raise NumericalError("receive covariance has a non-positive diagonal entry")
    c = r_yy / np.sqrt(np.outer(d, d))
    mag = np.abs(c)
    if np.any(mag > 1.0 + 1e-9):
        raise NumericalError(f"correlation magnitude {mag.max():.6g} exceeds 1")
    return c


def quantized_covariance_T(r_yy: np.ndarray, spec: QuantizerSpec,
                           agc: AgcState | None = None) -> np.ndarray:
    """Covariance of the quantized output in the unit-variance branch frame.

    Entry (i, j) is g(Re c_ij) + 1j*g(Im c_ij) where c is the correlation
    matrix of the input and g the scalar output-correlation function at the
    AGC operating point (I and Q quantized independently).
    """
    agc = agc or agc_state(spec)
    c = _unit_correlation(r_yy)
    tab = gtable(spec, agc.ratio)
    t = tab(np.clip(c.real, -1.0, 1.0)) + 1j * tab(np.clip(c.imag, -1.0, 1.0))
    _, p = _gauss_moments(spec.levels, spec.thresholds, agc.ratio)
    np.fill_diagonal(t, p)
    return _hermitize(t)


def error_covariance(r_yy: np.ndarray, r_rr: np.ndarray, rho: float,
                     variant: str = "exact") -> np.ndarray:
    """Quantization error covariance in the unit-variance branch frame.

    Subtracts the linearly explained part gain^2 * C from the quantized
    output covariance, then repairs tiny negative eigenvalues from quadrature
    and interpolation noise.  The diagonal variant keeps only the diagonal.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    gain = 1.0 - rho
    c = _unit_correlation(r_yy)
    r_ee = _hermitize(r_rr - gain * gain * c)
    if variant == "diagonal":
        return np.diag(np.real(np.diag(r_ee))).astype(complex)
    eigval, eigvec = np.linalg.eigh(r_ee)
    if eigval[0] < 0.0:
        r_ee = _hermitize((eigvec * np.maximum(eigval, 0.0)) @ eigvec.conj().T)
    return r_ee


def effective_system(h_f: ChannelFrequency, r_noise: np.ndarray,
                     r_x_f: np.ndarray, spec: QuantizerSpec, variant: str = "exact",
                     agc: AgcState | None = None,
                     w: np.ndarray | None = None) -> EffectiveSystem:
    """Channel and noise of the equivalent linear system after quantization.

    Depends on the transmit covariance through the branch powers, so it must
    be recomputed whenever ``r_x_f`` changes.  If a combiner ``w`` is given,
    the channel and noise are combined first and the quantizer acts on the
    combined branches.
    """
    agc = agc or agc_state(spec)
    bins = h_f.bins
    if w is not None:
        bins = np.einsum("rk,frt->fkt", w.conj(), bins)
        r_noise = w.conj().T @ r_noise @ w
        h_f = ChannelFrequency(bins)
    r_yy = receive_covariance(h_f, r_x_f, r_noise)
    r_rr = quantized_covariance_T(r_yy, spec, agc)
    r_ee = error_covariance(r_yy, r_rr, agc.rho_eff, variant)
    f_gain = bussgang_gain(r_yy, agc.rho_eff)
    h_eff = f_gain[None, :, None] * bins
    r_n_eff = _hermitize(np.outer(f_gain, f_gain) * r_noise + r_ee)
    return EffectiveSystem(h_eff, r_n_eff, f_gain, r_ee)
