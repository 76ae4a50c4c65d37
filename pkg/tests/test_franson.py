import math
import os
import sys
from unittest.mock import patch

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.sagnac.franson import (
    FransonConfig,
    FringeFitError,
    FringeScan,
    fit_visibility,
    read_scan_csv,
    simulate_fringe_scan,
    validate_fsr,
    visibility_to_qber,
    write_scan_csv,
)
from src.sagnac.franson.fringes import fringe_mean

SIXTH_TURNS = np.arange(6) * math.pi / 3


def exact_scan(visibility=0.5, mean=1000.0, phase0=math.pi / 3, phases=SIXTH_TURNS):
    counts = np.rint(fringe_mean(mean, visibility, phases, phase0))
    return FringeScan(phases_rad=phases, coincidences=counts)


def test_default_config_satisfies_hierarchy():
    check = validate_fsr(FransonConfig())
    assert check.valid
    assert bool(check)
    assert check.warnings == []
    assert FransonConfig().delay_ps == pytest.approx(1000.0)


def test_fsr_above_photon_bandwidth_is_invalid():
    check = validate_fsr(FransonConfig(fsr_hz=200e9))
    assert not check.valid
    assert len(check.diagnostics) == 1


def test_fsr_below_pump_linewidth_is_invalid():
    check = validate_fsr(FransonConfig(pump_linewidth_hz=2e9, fsr_hz=1e9))
    assert not check.valid


def test_equal_values_violate_strict_inequality():
    assert not validate_fsr(FransonConfig(fsr_hz=100e9, photon_bandwidth_hz=100e9)).valid


def test_short_delay_warns_about_jitter():
    check = validate_fsr(FransonConfig(fsr_hz=5e9))
    assert check.valid
    assert len(check.warnings) == 1


def test_exact_fringe_is_recovered():
    scan = exact_scan()
    assert scan.coincidences.tolist() == [1250, 750, 500, 750, 1250, 1500]
    fit = fit_visibility(scan)
    assert fit.visibility == pytest.approx(0.5, abs=1e-9)
    assert fit.phase0 == pytest.approx(math.pi / 3, abs=1e-9)
    assert not fit.fallback


def test_visibility_is_scale_invariant():
    scan = exact_scan()
    tripled = FringeScan(phases_rad=scan.phases_rad, coincidences=scan.coincidences * 3)
    assert fit_visibility(tripled).visibility == pytest.approx(fit_visibility(scan).visibility, abs=1e-9)


def test_constant_counts_give_zero_visibility():
    scan = FringeScan(phases_rad=SIXTH_TURNS, coincidences=np.full(6, 800))
    visibility, sigma, _ = fit_visibility(scan)
    assert visibility == pytest.approx(0.0, abs=1e-9)
    assert sigma > 0


def test_poisson_fits_are_unbiased():
    # 250 k coincidências médias por ponto, 50 pontos por período
    phases = np.linspace(0, 2 * math.pi, 50, endpoint=False)
    fits = [fit_visibility(simulate_fringe_scan(0.99, 2.5e5, phases, seed)) for seed in range(50)]
    values = np.array([f.visibility for f in fits])
    assert np.all(np.abs(values - 0.99) <= 0.01)
    assert abs(values.mean() - 0.99) < 0.002
    for fit in fits:
        assert abs(fit.visibility - 0.99) < 5 * fit.visibility_sigma


def test_simulation_is_deterministic():
    first = simulate_fringe_scan(0.9, 500, SIXTH_TURNS, seed=4)
    second = simulate_fringe_scan(0.9, 500, SIXTH_TURNS, seed=4)
    assert np.array_equal(first.coincidences, second.coincidences)


@pytest.mark.parametrize(
    "phases",
    [
        np.linspace(0, 2 * math.pi, 4, endpoint=False),
        np.linspace(0, math.pi, 8),
        np.array([0.0, 0.0, 0.0, 1.0, 2.0, 6.3]),
    ],
)
def test_insufficient_coverage_is_rejected(phases):
    scan = FringeScan(phases_rad=phases, coincidences=np.full(phases.size, 100))
    with pytest.raises(FringeFitError):
        fit_visibility(scan)


def test_all_zero_counts_are_rejected():
    with pytest.raises(FringeFitError):
        fit_visibility(FringeScan(phases_rad=SIXTH_TURNS, coincidences=np.zeros(6)))


def test_failed_fit_falls_back_to_max_min():
    scan = exact_scan()
    with patch("src.sagnac.franson.fringes.curve_fit", side_effect=RuntimeError("sem convergência")):
        fit = fit_visibility(scan)
    assert fit.fallback
    assert fit.method == "max_min"
    assert fit.visibility == pytest.approx((1500 - 500) / (1500 + 500))
    assert math.isnan(fit.visibility_sigma)


def test_visibility_to_qber():
    assert visibility_to_qber(0.87) == pytest.approx(0.065)
    assert visibility_to_qber(1.0) == 0.0
    with pytest.raises(ValueError):
        visibility_to_qber(1.2)


def test_scan_validation():
    with pytest.raises(ValueError):
        FringeScan(phases_rad=[0.0, 1.0], coincidences=[1])
    with pytest.raises(ValueError):
        FringeScan(phases_rad=[0.0], coincidences=[-1])
    with pytest.raises(ValueError):
        simulate_fringe_scan(1.5, 100, SIXTH_TURNS, seed=0)


def test_scan_csv_roundtrip(tmp_path):
    scan = simulate_fringe_scan(0.8, 300, SIXTH_TURNS, seed=1, integration_s=2.0)
    path = write_scan_csv(tmp_path / "franjas.csv", scan)
    restored = read_scan_csv(path)
    assert restored.integration_s == pytest.approx(2.0)
    assert np.array_equal(restored.coincidences, scan.coincidences)
    assert np.allclose(restored.phases_rad, scan.phases_rad)


def test_scan_csv_requires_integration_header(tmp_path):
    path = tmp_path / "sem_cabecalho.csv"
    path.write_text("phase_rad,counts\n0.0,1\n")
    with pytest.raises(FringeFitError):
        read_scan_csv(path)
