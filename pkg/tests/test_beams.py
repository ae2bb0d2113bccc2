import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbf.beams import (array_factor, build_codebook, combine, mean_beam_error,
                       minimum_beam_count, select_beams, solve_beam_spacing)
from qbf.channel import ChannelTaps, draw_ray_channel, steering_vector


def test_array_factor_mainlobe():
    for m_c in (1, 2, 8, 32):
        assert array_factor(0.7, 0.7, m_c) == pytest.approx(1.0)


def test_array_factor_single_element():
    for theta in np.linspace(-np.pi, np.pi, 17):
        assert array_factor(theta, 0.0, 1) == pytest.approx(1.0)


def test_array_factor_null():
    # |sin(pi)/sin(pi/2)| / 2 = 0
    assert array_factor(np.pi / 2, 0.0, 2) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(-np.pi, np.pi), st.floats(0, 2 * np.pi), st.integers(1, 32))
def test_array_factor_range(theta, phi_b, m_c):
    af = array_factor(theta, phi_b, m_c)
    assert -1e-12 <= af <= 1.0 + 1e-12


def test_mean_error_vanishing_spacing():
    for m_c in (2, 8):
        assert mean_beam_error(1e-6, m_c) < 1e-6


def test_mean_error_single_element_zero():
    assert mean_beam_error(1.0, 1) == 0.0


def test_mean_error_brackets_seven_beams():
    assert mean_beam_error(2 * np.pi / 7, 2) <= 0.1
    assert mean_beam_error(2 * np.pi / 6, 2) > 0.1


def test_mean_error_monotone_grid():
    for m_c in (2, 4):
        vals = [mean_beam_error(d, m_c) for d in np.linspace(0.05, np.pi, 24)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_mean_error_rejects_bad_spacing():
    with pytest.raises(ValueError):
        mean_beam_error(0.0, 2)
    with pytest.raises(ValueError):
        mean_beam_error(4.0, 2)


def test_minimum_beam_table():
    expected = {2: 7, 4: 14, 8: 29, 16: 58, 32: 115}
    for m_c, n in expected.items():
        assert minimum_beam_count(0.1, m_c) == n


def test_spacing_shrinks_with_subarray_size():
    assert solve_beam_spacing(0.1, 4) < solve_beam_spacing(0.1, 2)


def test_spacing_round_trip():
    d = solve_beam_spacing(0.05, 8)
    assert mean_beam_error(d, 8) == pytest.approx(0.05, abs=1e-6)


def test_spacing_unreachable_error():
    with pytest.raises(ValueError):
        solve_beam_spacing(0.1, 1)  # single element never loses gain


def test_codebook_sizes():
    assert len(build_codebook(2).angles) == 8
    assert len(build_codebook(32).angles) == 128
    assert build_codebook(1).angles == pytest.approx((0, np.pi / 2, np.pi, 3 * np.pi / 2))


def test_codebook_spacing():
    cb = build_codebook(4)
    diffs = np.diff(cb.angles)
    assert np.allclose(diffs, 2 * np.pi / 16)
    assert cb.angles[0] == 0.0


def _beam_metric(ch, angles, m_c, chain):
    """Independent brute-force evaluation of the selection metric."""
    out = []
    h_i = ch.taps[:, chain * m_c:(chain + 1) * m_c, :]
    for phi in angles:
        w = steering_vector(phi, m_c)
        out.append(sum(np.sum(np.abs(w.conj() @ h_i[l]) ** 2) for l in range(ch.n_taps)))
    return np.asarray(out)


def test_select_beams_aligned_ray():
    m_c, m_t = 8, 2
    cb = build_codebook(m_c)
    phi_star = cb.angles[3]
    theta = np.arcsin(phi_star / np.pi)
    a_r = steering_vector(np.pi * np.sin(theta), m_c)
    a_t = steering_vector(-0.4, m_t)
    taps = (0.8 + 0.1j) * np.outer(a_r, a_t)[None, :, :]
    comb = select_beams(ChannelTaps(taps), 1, m_c, cb)
    assert comb.angles[0] == phi_star
    # brute force agrees
    metric = _beam_metric(ChannelTaps(taps), cb.angles, m_c, 0)
    assert cb.angles[int(np.argmax(metric))] == phi_star


def test_select_beams_single_antenna_chain_is_identity():
    rng = np.random.default_rng(0)
    ch = draw_ray_channel(3, 4, 2, rng)
    comb = select_beams(ch, 4, 1, build_codebook(1))
    assert comb.angles == (0.0, 0.0, 0.0, 0.0)
    assert np.allclose(comb.matrix, np.eye(4))


def test_select_beams_is_argmax():
    rng = np.random.default_rng(1)
    cb = build_codebook(2)
    for _ in range(5):
        ch = draw_ray_channel(4, 8, 3, rng)
        comb = select_beams(ch, 4, 2, cb)
        for chain in range(4):
            metric = _beam_metric(ch, cb.angles, 2, chain)
            chosen = metric[cb.angles.index(comb.angles[chain])]
            assert chosen >= metric.max() - 1e-12


def test_select_beams_scale_invariant():
    rng = np.random.default_rng(2)
    ch = draw_ray_channel(5, 8, 2, rng)
    cb = build_codebook(4)
    a = select_beams(ch, 2, 4, cb).angles
    b = select_beams(ChannelTaps(7.3 * ch.taps), 2, 4, cb).angles
    assert a == b


def test_select_beams_dimension_check():
    ch = draw_ray_channel(2, 8, 2, np.random.default_rng(3))
    with pytest.raises(ValueError):
        select_beams(ch, 3, 2, build_codebook(2))


def test_combiner_block_structure():
    rng = np.random.default_rng(4)
    ch = draw_ray_channel(3, 8, 2, rng)
    comb = select_beams(ch, 2, 4, build_codebook(4))
    w = comb.matrix
    assert w.shape == (8, 2)
    assert np.allclose(np.abs(w[:4, 0]), 1.0) and np.allclose(w[4:, 0], 0.0)
    assert np.allclose(np.abs(w[4:, 1]), 1.0) and np.allclose(w[:4, 1], 0.0)
    assert np.allclose(w.conj().T @ w, 4 * np.eye(2))


def test_combine_identity():
    rng = np.random.default_rng(5)
    ch = draw_ray_channel(2, 3, 2, rng)
    comb = select_beams(ch, 3, 1, build_codebook(1))
    r = 0.7 * np.eye(3, dtype=complex)
    h_c, r_c = combine(comb, ch, r)
    assert np.allclose(h_c.taps, ch.taps)
    assert np.allclose(r_c, r)


def test_combine_white_noise_scaling():
    rng = np.random.default_rng(6)
    ch = draw_ray_channel(2, 8, 2, rng)
    comb = select_beams(ch, 2, 4, build_codebook(4))
    sigma2 = 0.37
    _, r_c = combine(comb, ch, sigma2 * np.eye(8, dtype=complex))
    assert np.allclose(r_c, sigma2 * 4 * np.eye(2))


def test_combine_dimension_check():
    ch = draw_ray_channel(2, 8, 2, np.random.default_rng(7))
    comb = select_beams(ch, 2, 4, build_codebook(4))
    with pytest.raises(ValueError):
        combine(comb, ch, np.eye(5, dtype=complex))
