import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbf.channel import (ChannelTaps, draw_pdp_channel, draw_ray_channel,
                         steering_vector, to_frequency)


def test_steering_zero_phase():
    assert np.allclose(steering_vector(0.0, 4), np.ones(4))


def test_steering_pi():
    assert np.allclose(steering_vector(np.pi, 2), [1.0, -1.0])


def test_steering_single_antenna():
    assert np.allclose(steering_vector(1.234, 1), [1.0])


def test_steering_rejects_empty():
    with pytest.raises(ValueError):
        steering_vector(0.5, 0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-10, 10), st.integers(1, 64))
def test_steering_unit_modulus(phi, m):
    v = steering_vector(phi, m)
    assert np.allclose(np.abs(v), 1.0)
    assert v[0] == 1.0


def test_ray_channel_scalar_power():
    rng = np.random.default_rng(0)
    h2 = [abs(draw_ray_channel(1, 1, 1, rng).taps[0, 0, 0]) ** 2 for _ in range(20000)]
    assert np.mean(h2) == pytest.approx(1.0, rel=0.05)


def test_ray_channel_rank_bound():
    rng = np.random.default_rng(1)
    for _ in range(10):
        h = draw_ray_channel(2, 4, 4, rng).taps[0]
        assert np.linalg.matrix_rank(h) <= 2


def test_ray_channel_frobenius_normalization():
    rng = np.random.default_rng(2)
    acc = 0.0
    n = 10_000
    for _ in range(n):
        h = draw_ray_channel(7, 8, 8, rng).taps[0]
        acc += np.sum(np.abs(h) ** 2) / 8
    assert 0.97 <= acc / n <= 1.03


def test_ray_channel_rejects_zero_rays():
    with pytest.raises(ValueError):
        draw_ray_channel(0, 2, 2, np.random.default_rng(0))


def test_pdp_channel_active_tap_count():
    rng = np.random.default_rng(3)
    ch = draw_pdp_channel(32, 16, 0.35, 4, 2, rng)
    active = np.flatnonzero(np.abs(ch.taps).sum(axis=(1, 2)) > 0)
    assert active.size == 16


def test_pdp_channel_total_power_normalized():
    rng = np.random.default_rng(4)
    acc = 0.0
    n = 4000
    for _ in range(n):
        ch = draw_pdp_channel(32, 16, 0.35, 4, 4, rng)
        acc += np.sum(np.abs(ch.taps) ** 2) / 4
    assert acc / n == pytest.approx(1.0, rel=0.05)


def test_pdp_channel_flat_profile_uniform_power():
    rng = np.random.default_rng(5)
    per_tap = np.zeros(4)
    n = 4000
    for _ in range(n):
        ch = draw_pdp_channel(4, 4, 0.0, 2, 2, rng)
        per_tap += np.sum(np.abs(ch.taps) ** 2, axis=(1, 2))
    assert np.allclose(per_tap / n, 0.5, rtol=0.1)


def test_pdp_single_tap_carries_everything():
    rng = np.random.default_rng(6)
    acc = 0.0
    n = 4000
    for _ in range(n):
        ch = draw_pdp_channel(2, 1, 1.0, 3, 1, rng)
        acc += np.sum(np.abs(ch.taps) ** 2) / 3
    assert acc / n == pytest.approx(1.0, rel=0.05)


def test_pdp_rejects_too_many_taps():
    with pytest.raises(ValueError):
        draw_pdp_channel(4, 5, 0.1, 2, 2, np.random.default_rng(0))


def test_to_frequency_flat():
    h = np.arange(6, dtype=complex).reshape(1, 2, 3) + 1j
    hf = to_frequency(ChannelTaps(h), 8)
    assert np.allclose(hf.bins, np.broadcast_to(h[0], (8, 2, 3)))


def test_to_frequency_two_tap_closed_form():
    h = 0.3 - 0.7j
    taps = np.array([[[h]], [[h]]])
    hf = to_frequency(ChannelTaps(taps), 16)
    n = np.arange(16)
    assert np.allclose(hf.bins[:, 0, 0], h * (1 + np.exp(-2j * np.pi * n / 16)))


def test_to_frequency_parseval():
    rng = np.random.default_rng(7)
    taps = rng.standard_normal((5, 3, 2)) + 1j * rng.standard_normal((5, 3, 2))
    n_f = 128
    hf = to_frequency(ChannelTaps(taps), n_f)
    # independent oracle: explicit double sum over bins and entries
    lhs = sum(np.sum(np.abs(hf.bins[n]) ** 2) for n in range(n_f))
    rhs = n_f * np.sum(np.abs(taps) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_to_frequency_roundtrip():
    rng = np.random.default_rng(8)
    taps = rng.standard_normal((4, 2, 2)) + 1j * rng.standard_normal((4, 2, 2))
    hf = to_frequency(ChannelTaps(taps), 4)
    back = np.fft.ifft(hf.bins, axis=0)
    assert np.allclose(back, taps, atol=1e-10)


def test_to_frequency_too_few_bins():
    taps = np.zeros((4, 2, 2), dtype=complex)
    with pytest.raises(ValueError):
        to_frequency(ChannelTaps(taps), 3)
