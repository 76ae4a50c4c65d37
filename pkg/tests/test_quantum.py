import os
import sys

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.sagnac.quantum import (
    ANALYZER_SETTINGS,
    JONES_VECTORS,
    DensityMatrix,
    PolarizationProjector,
    SagnacState,
    StateError,
    analyzer_projector,
    apply_local_unitaries,
    clamp_to_physical,
    coincidence_probability,
    concurrence,
    fidelity_to_phi_plus,
    maximally_mixed,
    misalignment_unitary,
    phi_plus,
    pump_to_state,
    purity,
    sagnac_state,
    trace_distance,
    waveplate_unitary,
    werner_mix,
)


def overlap(a, b):
    return abs(np.vdot(a, b))


@pytest.mark.parametrize("label", sorted(ANALYZER_SETTINGS))
def test_analyzer_settings_project_onto_labelled_state(label):
    qwp, hwp = ANALYZER_SETTINGS[label]
    projector = analyzer_projector(qwp, hwp, label)
    # igualdade a menos de fase global
    assert overlap(projector.jones, JONES_VECTORS[label]) == pytest.approx(1.0, abs=1e-12)


def test_quarter_wave_at_45_degrees_maps_h_to_r():
    out = waveplate_unitary("quarter", np.pi / 4) @ JONES_VECTORS["H"]
    assert overlap(out, JONES_VECTORS["R"]) == pytest.approx(1.0)


def test_half_wave_at_22_5_degrees_maps_h_to_d():
    out = waveplate_unitary("half", np.pi / 8) @ JONES_VECTORS["H"]
    assert overlap(out, JONES_VECTORS["D"]) == pytest.approx(1.0)


@pytest.mark.parametrize("kind", ["quarter", "half"])
def test_waveplates_are_unitary_at_any_angle(kind):
    rng = np.random.default_rng(0)
    for angle in rng.uniform(-np.pi, np.pi, 100):
        u = waveplate_unitary(kind, angle)
        assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_half_wave_at_zero_is_diagonal_sign_flip():
    assert np.allclose(waveplate_unitary("half", 0.0), np.diag([1.0, -1.0]), atol=1e-12)


def test_waveplate_rejects_unknown_kind():
    with pytest.raises(ValueError):
        waveplate_unitary("full", 0.0)


def test_projector_orthogonal_and_unknown_label():
    d = PolarizationProjector.from_label("D")
    assert d.orthogonal.label == "A"
    assert overlap(d.jones, d.orthogonal.jones) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        PolarizationProjector.from_label("X")


def test_diagonal_pump_gives_phi_plus():
    state = pump_to_state(JONES_VECTORS["D"])
    assert state.alpha == pytest.approx(1 / np.sqrt(2))
    assert state.beta == pytest.approx(1 / np.sqrt(2))
    assert state.phi == pytest.approx(0.0)
    assert fidelity_to_phi_plus(sagnac_state(state)) == pytest.approx(1.0)


def test_circular_pump_sets_relative_phase():
    state = pump_to_state(JONES_VECTORS["R"])
    assert state.phi == pytest.approx(3 * np.pi / 2)


def test_horizontal_pump_gives_product_state():
    rho = sagnac_state(pump_to_state([1.0, 0.0]))
    assert rho.entries[0, 0] == pytest.approx(1.0)
    assert fidelity_to_phi_plus(rho) == pytest.approx(0.5)
    assert concurrence(rho) == pytest.approx(0.0, abs=1e-9)


def test_pump_is_renormalized():
    state = pump_to_state([2.0, 2.0])
    assert state.alpha**2 + state.beta**2 == pytest.approx(1.0, abs=1e-12)


def test_pump_rejects_null_vector():
    with pytest.raises(StateError):
        pump_to_state([0.0, 0.0])


def test_sagnac_state_requires_normalization():
    with pytest.raises(ValueError):
        SagnacState(alpha=0.8, beta=0.8)


@pytest.mark.parametrize(
    "matrix",
    [
        np.diag([0.5, 0.5, 0.5, 0.5]),
        np.array([[0.5, 1, 0, 0], [0, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
        np.diag([1.2, -0.2, 0.0, 0.0]),
        np.eye(3) / 3,
    ],
)
def test_density_matrix_rejects_unphysical(matrix):
    with pytest.raises(StateError):
        DensityMatrix(matrix)


def test_density_matrix_is_read_only_copy():
    source = np.eye(4) / 4
    rho = DensityMatrix(source)
    source[0, 0] = 1.0
    assert rho.entries[0, 0] == pytest.approx(0.25)
    with pytest.raises(ValueError):
        rho.entries[0, 0] = 0.5


def test_report_roundtrip():
    rho = werner_mix(0.9, sagnac_state(SagnacState(alpha=0.6, beta=0.8, phi=0.3)))
    restored = DensityMatrix.from_report(rho.to_report())
    assert np.allclose(restored.entries, rho.entries)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ("H", "H", 0.5),
        ("H", "V", 0.0),
        ("D", "D", 0.5),
        ("D", "A", 0.0),
        ("R", "L", 0.5),
        ("R", "R", 0.0),
    ],
)
def test_phi_plus_correlations(a, b, expected):
    p = coincidence_probability(
        phi_plus(), PolarizationProjector.from_label(a), PolarizationProjector.from_label(b)
    )
    assert p == pytest.approx(expected, abs=1e-12)


def test_probabilities_sum_to_one_over_complete_basis():
    rho = werner_mix(0.7, phi_plus())
    for first in ("H", "D", "R"):
        for second in ("H", "D", "R"):
            a = PolarizationProjector.from_label(first)
            b = PolarizationProjector.from_label(second)
            total = sum(
                coincidence_probability(rho, x, y) for x in (a, a.orthogonal) for y in (b, b.orthogonal)
            )
            assert total == pytest.approx(1.0)


@pytest.mark.parametrize("p", [0.0, 0.5, 0.96, 1.0])
def test_werner_metrics(p):
    rho = werner_mix(p, phi_plus())
    assert fidelity_to_phi_plus(rho) == pytest.approx(p + (1 - p) / 4)
    assert purity(rho) == pytest.approx((1 + 3 * p**2) / 4)
    assert concurrence(rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-9)


@pytest.mark.parametrize("phi", [0.0, np.pi / 4, np.pi / 2, np.pi])
def test_balanced_sagnac_fidelity_follows_relative_phase(phi):
    rho = sagnac_state(SagnacState(alpha=np.sqrt(0.5), beta=np.sqrt(0.5), phi=phi))
    assert fidelity_to_phi_plus(rho) == pytest.approx(np.cos(phi / 2) ** 2, abs=1e-12)


def test_phi_minus_is_orthogonal_to_phi_plus():
    phi_minus = sagnac_state(SagnacState(alpha=np.sqrt(0.5), beta=np.sqrt(0.5), phi=np.pi))
    assert fidelity_to_phi_plus(phi_minus) == pytest.approx(0.0, abs=1e-12)


def test_werner_purity_increases_with_p():
    values = [purity(werner_mix(p, phi_plus())) for p in np.linspace(0.0, 1.0, 21)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_werner_rejects_out_of_range(p):
    with pytest.raises(StateError):
        werner_mix(p, phi_plus())


def test_trace_distance_phi_plus_to_mixed():
    assert trace_distance(phi_plus(), maximally_mixed()) == pytest.approx(0.75)
    assert trace_distance(phi_plus(), phi_plus()) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("angle", [0.0, 0.05, 0.3])
def test_misalignment_reduces_fidelity(angle):
    rho = apply_local_unitaries(phi_plus(), np.eye(2), misalignment_unitary(angle))
    assert fidelity_to_phi_plus(rho) == pytest.approx(np.cos(angle) ** 2)
    assert purity(rho) == pytest.approx(1.0)


def test_local_unitaries_preserve_entanglement():
    rho = werner_mix(0.9, phi_plus())
    rotated = apply_local_unitaries(rho, waveplate_unitary("quarter", 0.3), waveplate_unitary("half", 1.1))
    assert purity(rotated) == pytest.approx(purity(rho))
    assert concurrence(rotated) == pytest.approx(concurrence(rho), abs=1e-9)


def test_clamp_to_physical_removes_negative_eigenvalues():
    matrix = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
    rho = clamp_to_physical(matrix)
    assert rho.eigenvalues.min() >= -1e-12
    assert np.trace(rho.entries).real == pytest.approx(1.0)
    assert rho.entries[0, 0].real == pytest.approx(0.6 / 1.1)


def test_clamp_to_physical_floor_keeps_full_rank():
    rho = clamp_to_physical(phi_plus().entries, floor=1e-6)
    assert rho.eigenvalues.min() > 0


def test_clamp_rejects_all_negative():
    with pytest.raises(StateError):
        clamp_to_physical(-np.eye(4))
