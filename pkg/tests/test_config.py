import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.sagnac.config import ConfigError, ConfigLoader, ScenarioConfig, parse_channel_pairs

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


def write_yaml(tmp_path, text, name="cenario.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_describe_reference_source():
    cfg = ConfigLoader().load()
    assert cfg.seed == 0
    assert cfg.source.spdc_fwhm_nm == 92.0
    assert cfg.detectors.a.efficiency == 0.8
    assert cfg.detectors.b.dark_rate_hz == 50.0
    plan = cfg.plan.build()
    assert plan.pairs[0] == (19, 23)
    assert len(plan) == 20


def test_crystal_preset_with_field_override(tmp_path):
    path = write_yaml(tmp_path, "source:\n  crystal: ppln1\n  smf_coupling: 0.5\n")
    cfg = ConfigLoader(path).load()
    assert cfg.source.spdc_fwhm_nm == 91.0
    assert cfg.source.shg_efficiency_per_w == pytest.approx(0.34)
    assert cfg.source.smf_coupling == pytest.approx(0.5)


def test_unknown_crystal_is_rejected(tmp_path):
    path = write_yaml(tmp_path, "source:\n  crystal: bbo\n")
    with pytest.raises(ConfigError):
        ConfigLoader(path).load()


def test_example_scenarios_load(monkeypatch):
    monkeypatch.chdir(PROJECT_ROOT)
    for name in ("padrao.yaml", "tomografia_werner.yaml", "qkd_deriva.yaml"):
        cfg = ConfigLoader(os.path.join("exemplos", name)).load()
        assert isinstance(cfg, ScenarioConfig)

    qkd = ConfigLoader(os.path.join("exemplos", "qkd_deriva.yaml")).load()
    kinds = [e.kind for e in qkd.qkd.all_events()]
    assert kinds == ["phase_drift", "phase_drift", "outage"]


def test_environment_placeholders_are_resolved(tmp_path, monkeypatch):
    monkeypatch.setenv("SAGNAC_TEST_SEED", "77")
    path = write_yaml(tmp_path, "seed: ${SAGNAC_TEST_SEED}\n")
    assert ConfigLoader(path).load().seed == 77


def test_validation_errors_carry_line_numbers(tmp_path):
    path = write_yaml(
        tmp_path,
        "seed: 1\n"
        "detectors:\n"
        "  a:\n"
        "    dark_rate_hz: 10\n"
        "    efficiency: 1.5\n",
    )
    with pytest.raises(ConfigError) as excinfo:
        ConfigLoader(path).load()
    diagnostics = excinfo.value.diagnostics
    assert len(diagnostics) == 1
    assert ":5:" in diagnostics[0]
    assert "detectors.a.efficiency" in diagnostics[0]


def test_pump_linewidth_must_be_below_grid_spacing(tmp_path):
    path = write_yaml(tmp_path, "source:\n  pump_linewidth_hz: 2.0e11\n")
    with pytest.raises(ConfigError):
        ConfigLoader(path).load()


def test_pump_wavelength_must_match_pump_channel():
    with pytest.raises(ConfigError):
        ConfigLoader().load({"plan": {"pump_channel": 30}})
    cfg = ConfigLoader().load(
        {
            "source": {"pump_wavelength_nm": 1552.52},
            "plan": {"pump_channel": 31, "n_pairs": 2, "excluded": [30, 32]},
        }
    )
    assert cfg.plan.pump_channel == 31


def test_overrides_take_precedence(tmp_path):
    path = write_yaml(tmp_path, "seed: 3\noutput_dir: saida/x\n")
    cfg = ConfigLoader(path).load({"seed": 9, "plan": {"pairs": [[18, 24]]}})
    assert cfg.seed == 9
    assert cfg.output_dir == "saida/x"
    assert cfg.plan.build().pairs == [(18, 24)]


def test_invalid_pair_override_is_rejected():
    with pytest.raises(ConfigError):
        ConfigLoader().load({"plan": {"pairs": [[19, 24]]}})


def test_parse_channel_pairs():
    assert parse_channel_pairs("19:23, 18:24") == [(19, 23), (18, 24)]
    with pytest.raises(ValueError):
        parse_channel_pairs("foo")
    with pytest.raises(ValueError):
        parse_channel_pairs(" , ")


def test_misalignment_lookup_ignores_pair_order():
    cfg = ConfigLoader().load({"tomography": {"misalignment_rad": {"23:19": 0.05}}})
    assert cfg.tomography.misalignment_for((19, 23)) == pytest.approx(0.05)
    assert cfg.tomography.misalignment_for((18, 24)) == 0.0


def test_invalid_misalignment_key_is_rejected():
    with pytest.raises(ConfigError):
        ConfigLoader().load({"tomography": {"misalignment_rad": {"dezenove": 0.1}}})


def test_yaml_syntax_error(tmp_path):
    path = write_yaml(tmp_path, "seed: [1, 2\n")
    with pytest.raises(ConfigError) as excinfo:
        ConfigLoader(path).load()
    assert "linha" in excinfo.value.diagnostics[0]


def test_root_must_be_mapping(tmp_path):
    path = write_yaml(tmp_path, "- 1\n- 2\n")
    with pytest.raises(ConfigError):
        ConfigLoader(path).load()


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        ConfigLoader("/nao/existe.yaml").load()
