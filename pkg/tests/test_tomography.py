import itertools
import math
import os
import sys
from unittest.mock import patch

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.sagnac.quantum import (
    DensityMatrix,
    clamp_to_physical,
    fidelity_to_phi_plus,
    phi_plus,
    trace_distance,
    werner_mix,
)
from src.sagnac.spectral import build_channel_plan
from src.sagnac.tomography import (
    TomographyError,
    TomographySchedule,
    expected_counts,
    invert_vector,
    linear_inversion,
    mle_reconstruct,
    params_to_t,
    poisson_log_likelihood,
    read_counts_csv,
    records_from_vector,
    rho_to_t,
    run_channel_sweep,
    simulate_tomography_counts,
    t_to_params,
    t_to_rho,
    write_counts_csv,
)
from src.sagnac.tomography.linear import dual_matrices
from src.sagnac.tomography.mle import ProfileLikelihood, bootstrap_errors
from src.sagnac.tomography.schedule import counts_vector
from src.sagnac.tomography.sweep import SWEEP_COLUMNS


@pytest.fixture
def schedule():
    return TomographySchedule.canonical()


# ---------------------------------------------------------------------------
# Esquema e contagens
# ---------------------------------------------------------------------------


def test_canonical_schedule(schedule):
    assert len(schedule) == 16
    assert schedule.settings[0] == ("H", "H")
    assert schedule.settings[-1] == ("R", "R")
    assert schedule.kets().shape == (16, 4)


def test_schedule_rejects_wrong_size_and_duplicates():
    with pytest.raises(ValueError):
        TomographySchedule(settings=tuple(itertools.product("HVDR", "HVDR"))[:15])
    duplicated = tuple(itertools.product("HVDR", "HVDR"))[:15] + (("H", "H"),)
    with pytest.raises(ValueError):
        TomographySchedule(settings=duplicated)


def test_expected_counts_for_phi_plus(schedule):
    values = expected_counts(phi_plus(), schedule, 1000.0)
    assert values[0] == pytest.approx(500.0)  # HH
    assert values[1] == pytest.approx(0.0, abs=1e-9)  # HV
    assert values[5] == pytest.approx(500.0)  # VV


def test_simulated_counts_are_deterministic(schedule):
    rho = werner_mix(0.9, phi_plus())
    first = simulate_tomography_counts(rho, schedule, 1e4, 1.0, seed=3)
    second = simulate_tomography_counts(rho, schedule, 1e4, 1.0, seed=3)
    assert [r.coincidences for r in first] == [r.coincidences for r in second]
    assert [r.setting_index for r in first] == list(range(16))
    assert first[0].singles_a > 0


def test_simulated_counts_reject_invalid_rate(schedule):
    with pytest.raises(ValueError):
        simulate_tomography_counts(phi_plus(), schedule, 0.0, 1.0, seed=0)


def test_counts_vector_requires_every_setting(schedule):
    records = records_from_vector(np.ones(16))
    with pytest.raises(TomographyError):
        counts_vector(records[:15], schedule)
    with pytest.raises(TomographyError):
        counts_vector(records[:15] + [records[0]], schedule)


def test_counts_csv_roundtrip(schedule, tmp_path):
    records = simulate_tomography_counts(phi_plus(), schedule, 1e3, 2.0, seed=1)
    path = write_counts_csv(tmp_path / "contagens.csv", records, schedule)
    restored = read_counts_csv(path, schedule)
    assert [r.coincidences for r in restored] == [r.coincidences for r in records]
    assert restored[3].integration_s == pytest.approx(2.0)


# ---------------------------------------------------------------------------
# Inversão linear
# ---------------------------------------------------------------------------


def test_linear_inversion_recovers_exact_state(schedule):
    rho = phi_plus()
    recovered = invert_vector(expected_counts(rho, schedule, 1.0), schedule)
    assert trace_distance(recovered, rho) < 1e-10


def test_singular_schedule_is_rejected():
    singular = TomographySchedule(settings=tuple(itertools.product("HVDA", "HVDA")))
    with pytest.raises(TomographyError):
        dual_matrices(singular)


def test_linear_inversion_rejects_zero_counts(schedule):
    with pytest.raises(TomographyError):
        linear_inversion(records_from_vector(np.zeros(16)), schedule)


# ---------------------------------------------------------------------------
# Máxima verossimilhança
# ---------------------------------------------------------------------------


def test_cholesky_parametrization_roundtrip():
    rho = werner_mix(0.8, phi_plus()).entries
    t = rho_to_t(rho)
    assert np.allclose(np.triu(t, 1), 0)
    assert np.allclose(t_to_rho(params_to_t(t_to_params(t))), rho)


def test_profile_likelihood_gradient_matches_finite_differences(schedule):
    rng = np.random.default_rng(42)
    counts = rng.integers(0, 500, size=16).astype(float)
    counts[[2, 7]] = 0
    objective = ProfileLikelihood(counts, schedule.kets())
    h = 1e-6
    for _ in range(10):
        x = rng.normal(size=16)
        numeric = np.array(
            [(objective.value(x + h * e) - objective.value(x - h * e)) / (2 * h) for e in np.eye(16)]
        )
        analytic = objective.gradient(x)
        assert np.linalg.norm(numeric - analytic) / np.linalg.norm(analytic) < 1e-5


def test_mle_agrees_with_linear_inversion_when_physical(schedule):
    rng = np.random.default_rng(7)
    for _ in range(50):
        rho = DensityMatrix(t_to_rho(params_to_t(rng.normal(size=16))))
        records = records_from_vector(expected_counts(rho, schedule, 1e10))
        linear = linear_inversion(records, schedule)
        result = mle_reconstruct(records, schedule, bootstrap=0)
        assert trace_distance(result.rho, linear) < 1e-6
        assert result.rho.eigenvalues.min() >= -1e-12


def test_mle_is_at_least_as_likely_as_clamped_linear(schedule):
    rho = werner_mix(0.99, phi_plus())
    records = simulate_tomography_counts(rho, schedule, 50.0, 1.0, seed=12)
    result = mle_reconstruct(records, schedule, bootstrap=0)
    baseline = clamp_to_physical(linear_inversion(records, schedule), floor=1e-8)
    assert result.log_likelihood >= poisson_log_likelihood(baseline, records, schedule) - 1e-6


def test_mle_single_populated_setting_favours_hh(schedule):
    values = np.zeros(16)
    values[0] = 1000
    result = mle_reconstruct(records_from_vector(values), schedule, bootstrap=0)
    diagonal = np.real(np.diag(result.rho.entries))
    assert diagonal[0] > 0.7
    assert int(np.argmax(diagonal)) == 0


def test_mle_rejects_all_zero_counts(schedule):
    with pytest.raises(TomographyError):
        mle_reconstruct(records_from_vector(np.zeros(16)), schedule)


def test_mle_high_statistics_werner(schedule):
    rho = werner_mix(0.96, phi_plus())
    records = simulate_tomography_counts(rho, schedule, 1e5, 10.0, seed=2)
    result = mle_reconstruct(records, schedule, bootstrap=20, seed=5)
    assert result.fidelity == pytest.approx(fidelity_to_phi_plus(rho), abs=0.005)
    assert 0 < result.fidelity_sigma < 0.01
    summary = result.summary()
    assert set(summary) >= {"fidelity", "purity", "rho", "converged"}
    assert len(summary["rho"]) == 4


def test_poisson_likelihood_is_minus_infinity_for_impossible_counts(schedule):
    hh = DensityMatrix.from_pure([1, 0, 0, 0])
    values = np.zeros(16)
    values[0] = 10
    values[5] = 3  # VV
    assert poisson_log_likelihood(hh, values, schedule) == -math.inf


def test_bootstrap_sigma_scales_with_inverse_sqrt_counts(schedule):
    x_true = t_to_params(rho_to_t(werner_mix(0.8, phi_plus()).entries))
    scaled = []
    for total in (1e4, 1e5, 1e6):
        sigma_f, _ = bootstrap_errors(x_true, total, schedule, replicas=200, seed=1, max_iter=5000)
        scaled.append(sigma_f * math.sqrt(total))
    assert max(scaled) / min(scaled) < 1.2


def test_bootstrap_disabled_returns_zero(schedule):
    x_true = t_to_params(rho_to_t(werner_mix(0.8, phi_plus()).entries))
    assert bootstrap_errors(x_true, 1e4, schedule, replicas=1, seed=0, max_iter=100) == (0.0, 0.0)


# ---------------------------------------------------------------------------
# Varredura por canal
# ---------------------------------------------------------------------------


def test_channel_sweep_werner_bounds(schedule):
    plan = build_channel_plan(21, 20, {20, 22})
    states = [werner_mix(0.96, phi_plus())] * len(plan)
    # rate·t = 1e6 por configuração
    report = run_channel_sweep(states, plan, schedule, 1e5, 10.0, seed=2024, bootstrap=30)
    expected_purity = (3 * 0.96**2 + 1) / 4

    assert len(report.entries) == 20
    assert not report.failures
    for entry in report.entries:
        result = entry.result
        assert 0.955 <= result.fidelity <= 0.985
        assert result.purity_sigma > 0
        assert abs(result.purity - expected_purity) <= 3 * result.purity_sigma
    assert [e.pair for e in report.entries] == plan.pairs


def test_channel_sweep_is_independent_of_worker_count(schedule):
    plan = build_channel_plan(21, 4, {20, 22})
    states = [werner_mix(0.9, phi_plus())] * len(plan)
    serial = run_channel_sweep(states, plan, schedule, 1e4, 1.0, seed=8, bootstrap=0, workers=1)
    parallel = run_channel_sweep(states, plan, schedule, 1e4, 1.0, seed=8, bootstrap=0, workers=2)
    assert serial.to_frame().equals(parallel.to_frame())


def test_channel_sweep_isolates_failures(schedule):
    from src.sagnac.tomography import sweep as sweep_module

    plan = build_channel_plan(21, 3, {20, 22})
    states = [werner_mix(0.9, phi_plus())] * len(plan)
    real = sweep_module.mle_reconstruct
    calls = {"n": 0}

    def flaky(*args, **kwargs):
        calls["n"] += 1
        if calls["n"] == 2:
            raise TomographyError("falha simulada")
        return real(*args, **kwargs)

    seen = []
    with patch("src.sagnac.tomography.sweep.mle_reconstruct", side_effect=flaky):
        report = run_channel_sweep(
            states, plan, schedule, 1e4, 1.0, seed=1, bootstrap=0, on_entry=seen.append
        )

    assert [e.ok for e in report.entries] == [True, False, True]
    assert "falha simulada" in report.entries[1].error
    assert report.has_warnings
    assert len(seen) == 3
    assert report.summary()["failed"] == 1


def test_channel_sweep_misalignment_lowers_fidelity(schedule):
    plan = build_channel_plan(21, 2, {20, 22})
    states = [werner_mix(0.98, phi_plus())] * 2
    report = run_channel_sweep(
        states, plan, schedule, 1e5, 10.0, seed=3, bootstrap=0, misalignment_rad=[0.0, 0.2]
    )
    first, second = (e.result.fidelity for e in report.entries)
    assert second < first - 0.02


def test_channel_sweep_validates_lengths(schedule):
    plan = build_channel_plan(21, 2, {20, 22})
    with pytest.raises(ValueError):
        run_channel_sweep([phi_plus()], plan, schedule, 1e3, 1.0, seed=0)
    with pytest.raises(ValueError):
        run_channel_sweep([phi_plus()] * 2, plan, schedule, 1e3, 1.0, seed=0, misalignment_rad=[0.1])


def test_sweep_report_csv(schedule, tmp_path):
    plan = build_channel_plan(21, 2, {20, 22})
    report = run_channel_sweep([phi_plus()] * 2, plan, schedule, 1e4, 1.0, seed=0, bootstrap=0)
    path = report.write_csv(tmp_path / "varredura.csv")
    assert path.read_text().splitlines()[0] == ",".join(SWEEP_COLUMNS)
