import os
import sys

import numpy as np
import pytest
from scipy.integrate import trapezoid

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.sagnac.spectral import (
    CRYSTAL_PRESETS,
    ChannelPlan,
    ChannelPlanError,
    NoiseSpectrum,
    SourceParams,
    build_channel_plan,
    channel_bandwidth_nm,
    channel_plan_table,
    channel_wavelength_nm,
    conjugate_channel,
    coupled_pair_rate,
    itu_channel_frequency,
    load_noise_spectrum,
    nearest_itu_channel,
    noise_rate,
    pair_rate,
    read_noise_spectrum_csv,
    spdc_spectral_density,
    wavelength_to_frequency,
)
from src.sagnac.spectral.planning import PLAN_COLUMNS

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


@pytest.fixture
def ppln2():
    return SourceParams()


@pytest.mark.parametrize(
    "channel, wavelength_nm",
    [(21, 1560.6), (19, 1562.23), (23, 1558.98)],
)
def test_itu_grid_matches_published_channel_wavelengths(channel, wavelength_nm):
    assert abs(channel_wavelength_nm(channel) - wavelength_nm) < 0.01


def test_itu_channel_frequency_values():
    assert itu_channel_frequency(21) == pytest.approx(192.1)
    assert itu_channel_frequency(19) == pytest.approx(191.9)
    assert itu_channel_frequency(0) == pytest.approx(190.0)


def test_conjugate_channel():
    assert conjugate_channel(19, 21) == 23
    assert conjugate_channel(21, 21) == 21
    assert conjugate_channel(3, 21) == 39


def test_default_plan_starts_at_19_23_and_ends_at_0_42():
    plan = build_channel_plan(21, 20, {20, 22})
    assert len(plan) == 20
    assert plan.pairs[0] == (19, 23)
    assert plan.pairs[-1] == (0, 42)


def test_plan_without_exclusions_uses_nearest_pair():
    plan = build_channel_plan(21, 1, set())
    assert plan.pairs == [(20, 22)]


def test_plan_rejects_zero_pairs():
    with pytest.raises(ChannelPlanError):
        build_channel_plan(21, 0, set())


def test_plan_rejects_extrapolation_beyond_bound():
    with pytest.raises(ChannelPlanError):
        build_channel_plan(21, 50, {20, 22})


def test_plan_pairs_are_symmetric_on_frequency_grid():
    plan = build_channel_plan(21, 20, {20, 22})
    pump_thz = itu_channel_frequency(plan.pump_channel)
    for signal, idler in plan.pairs:
        assert signal + idler == 42
        total = itu_channel_frequency(signal) + itu_channel_frequency(idler)
        assert total == pytest.approx(2 * pump_thz, abs=1e-9)
        assert not {signal, idler} & plan.excluded
    distances = [abs(signal - 21) for signal, _ in plan.pairs]
    assert distances == sorted(distances)


def test_explicit_plan_is_normalized_and_sorted():
    plan = ChannelPlan.from_pairs([(18, 24), (23, 19)], pump=21)
    assert plan.pairs == [(19, 23), (18, 24)]
    assert ChannelPlan.label(plan.pairs[0]) == "ITU19-23"


@pytest.mark.parametrize("pairs", [[(19, 24)], [(20, 22)], [(21, 21)]])
def test_explicit_plan_rejects_invalid_pairs(pairs):
    with pytest.raises(ChannelPlanError):
        ChannelPlan.from_pairs(pairs, pump=21)


def test_channel_bandwidth_for_100ghz_at_pump():
    assert channel_bandwidth_nm(1560.6, 100.0) == pytest.approx(0.8124, abs=1e-3)


def test_spectral_density_shape():
    params = CRYSTAL_PRESETS["ppln1"]
    assert params.spdc_fwhm_nm == 91.0
    assert spdc_spectral_density(1560.6, params) == pytest.approx(1.0)
    assert spdc_spectral_density(1560.6 + 45.5, params) == pytest.approx(0.5)
    for offset in (10.0, 30.0, 60.0):
        left = spdc_spectral_density(1560.6 - offset, params)
        right = spdc_spectral_density(1560.6 + offset, params)
        assert left == pytest.approx(right)


def test_spectral_density_integral_is_finite_and_positive(ppln2):
    grid = np.linspace(1560.6 - 3 * 92.0, 1560.6 + 3 * 92.0, 2001)
    values = np.array([spdc_spectral_density(w, ppln2) for w in grid])
    integral = trapezoid(values, grid)
    # Gaussiana: FWHM·√(π / 4 ln 2)
    assert integral == pytest.approx(92.0 * np.sqrt(np.pi / (4 * np.log(2))), rel=1e-3)


def test_pair_rate_examples(ppln2):
    assert pair_rate(1.0, 0.8, ppln2) == pytest.approx(8240.0)
    assert pair_rate(0.0, 0.8, ppln2) == 0.0


@pytest.mark.parametrize("power_mw", [0.5, 1.0, 2.0])
def test_pair_rate_is_quadratic_in_power(ppln2, power_mw):
    assert pair_rate(2 * power_mw, 0.8, ppln2) / pair_rate(power_mw, 0.8, ppln2) == pytest.approx(4.0)


def test_pair_rate_is_additive_in_bandwidth(ppln2):
    assert pair_rate(3.0, 0.5, ppln2) + pair_rate(3.0, 0.3, ppln2) == pytest.approx(pair_rate(3.0, 0.8, ppln2))


def test_pair_rate_rejects_invalid_inputs(ppln2):
    with pytest.raises(ValueError):
        pair_rate(-1.0, 0.8, ppln2)
    with pytest.raises(ValueError):
        pair_rate(1.0, 0.0, ppln2)


def test_coupled_rate_applies_coupling_to_both_photons(ppln2):
    assert coupled_pair_rate(15.0, 0.8, ppln2) == pytest.approx(pair_rate(15.0, 0.8, ppln2) * 0.62**2)


def test_source_params_reject_coupling_above_one():
    with pytest.raises(ValueError):
        SourceParams(smf_coupling=1.2)


def test_noise_spectrum_interpolation():
    assert load_noise_spectrum([]).rate_at(1560.0) == 0.0

    single = load_noise_spectrum([(1560.0, 100.0)])
    assert single.rate_at(1560.0) == 100.0
    assert single.rate_at(1550.0) == 0.0

    pair = load_noise_spectrum([(1550.0, 0.0), (1570.0, 200.0)])
    assert pair.rate_at(1560.0) == pytest.approx(100.0)


@pytest.mark.parametrize(
    "rows",
    [
        [(1560.0, 1.0), (1550.0, 2.0)],
        [(1550.0, 1.0), (1550.0, 2.0)],
        [(1550.0, -1.0)],
    ],
)
def test_noise_spectrum_rejects_invalid_rows(rows):
    with pytest.raises(ValueError):
        load_noise_spectrum(rows)


def test_noise_rate_scales_with_bandwidth_and_power():
    spectrum = load_noise_spectrum([(1550.0, 0.0), (1570.0, 200.0)])
    assert noise_rate(spectrum, 1560.0, 0.8, 10.0) == pytest.approx(800.0)


def test_read_noise_spectrum_csv_with_header():
    spectrum = read_noise_spectrum_csv(os.path.join(PROJECT_ROOT, "test_data", "raman_ruido.csv"))
    assert len(spectrum.samples) == 12
    assert spectrum.rate_at(1560.0) == pytest.approx(5.0)
    assert spectrum.rate_at(1700.0) == 0.0


def test_read_noise_spectrum_csv_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_noise_spectrum_csv(tmp_path / "nada.csv")


def test_channel_plan_table(ppln2):
    plan = build_channel_plan(21, 20, {20, 22})
    bandwidth = channel_bandwidth_nm(ppln2.pump_wavelength_nm)
    table = channel_plan_table(plan, ppln2, pump_power_mw=15.0, channel_bandwidth_nm=bandwidth)

    assert list(table.columns) == PLAN_COLUMNS
    assert len(table) == 20
    assert (table.iloc[0]["signal"], table.iloc[0]["idler"]) == (19, 23)
    assert (table["noise_signal_hz"] == 0).all()
    # densidade decresce para os pares mais distantes da bomba
    assert table["coupled_pair_rate_hz"].is_monotonic_decreasing


def test_channel_plan_table_with_noise(ppln2):
    plan = build_channel_plan(21, 2, {20, 22})
    noise = NoiseSpectrum(samples=[(1550.0, 10.0), (1570.0, 10.0)])
    table = channel_plan_table(plan, ppln2, pump_power_mw=2.0, channel_bandwidth_nm=0.8, noise=noise)
    assert table["noise_signal_hz"].tolist() == pytest.approx([16.0, 16.0])


@pytest.mark.parametrize("n", [0, 19, 21, 23, 42])
def test_wavelength_and_frequency_are_inverse(n):
    wavelength = channel_wavelength_nm(n)
    assert wavelength_to_frequency(wavelength) == pytest.approx(itu_channel_frequency(n), abs=1e-12)
    assert nearest_itu_channel(wavelength) == n


def test_reference_pump_sits_on_channel_21():
    assert nearest_itu_channel(1560.6) == 21
    with pytest.raises(ValueError):
        wavelength_to_frequency(0.0)
