import pytest

from qbf.power import FrontendConfig, PowerTable, energy_efficiency, frontend_power


def test_dbf_one_bit_64_antennas():
    cfg = FrontendConfig(m_r=64, m_rfe=64, m_c=1, bits=1)
    assert frontend_power(cfg) == pytest.approx(700.9)


def test_hbf_four_bit_64_antennas():
    cfg = FrontendConfig(m_r=64, m_rfe=16, m_c=4, bits=4, f_s_ghz=2.5)
    assert frontend_power(cfg) == pytest.approx(809.7)


def test_dbf_has_no_phase_shifters():
    base = FrontendConfig(m_r=8, m_rfe=8, m_c=1, bits=2)
    with_ps = FrontendConfig(m_r=8, m_rfe=4, m_c=2, bits=2)
    table = PowerTable()
    assert not base.uses_analog_combining
    assert with_ps.uses_analog_combining
    diff = frontend_power(with_ps, table) - frontend_power(base, table)
    # 8 phase shifters added, 4 VGA+ADC pairs removed
    p_adc = table.adc_fom_mw_per_ghz * 2.5 * 2 ** 2
    assert diff == pytest.approx(8 * table.p_ps - 4 * (2 * table.p_vga + 2 * p_adc))


def test_power_increasing_in_bits():
    vals = [frontend_power(FrontendConfig(16, 16, 1, b)) for b in range(1, 9)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_geometry_invariant_enforced():
    with pytest.raises(ValueError):
        FrontendConfig(m_r=8, m_rfe=8, m_c=2, bits=4)


def test_power_table_rejects_negative():
    with pytest.raises(ValueError):
        PowerTable(p_lna=-1.0)


def test_bits_validated():
    with pytest.raises(ValueError):
        FrontendConfig(m_r=4, m_rfe=4, m_c=1, bits=0)


def test_energy_efficiency():
    assert energy_efficiency(0.0, 0.5) == 0.0
    assert energy_efficiency(2.0, 0.5) == 2 * energy_efficiency(1.0, 0.5)
    with pytest.raises(ValueError):
        energy_efficiency(1.0, 0.0)
