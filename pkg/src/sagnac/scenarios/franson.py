"""Cenário ``franson``: verificação de FSR, varredura de franjas e visibilidade."""

from pathlib import Path

import numpy as np

from src.sagnac.config import ScenarioConfig
from src.sagnac.franson.analyzer import validate_fsr
from src.sagnac.franson.fringes import fit_visibility, simulate_fringe_scan, visibility_to_qber, write_scan_csv
from src.sagnac.interfaces import EventBus, ScenarioOutcome
from src.sagnac.scenarios.base import BaseScenario


class FransonScenario(BaseScenario):
    @property
    def command(self) -> str:
        return "franson"

    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        outcome = ScenarioOutcome()
        options = cfg.franson

        check = validate_fsr(options)
        for message in check.diagnostics:
            self.warn(f"FSR inadmissível: {message}", bus, outcome)
        for message in check.warnings:
            self.warn(message, bus, outcome)

        # só o pico central interfere; satélites ±1/FSR ficam fora da janela
        central_counts = options.mean_counts * options.postselection_factor
        phases = np.linspace(0.0, 2 * np.pi, options.phase_points, endpoint=False)
        scan = simulate_fringe_scan(
            options.visibility,
            central_counts,
            phases,
            cfg.seed,
            phase0=options.phase0,
            integration_s=options.integration_s,
        )
        scan_path = out_dir / "franson_scan.csv"
        write_scan_csv(scan_path, scan)
        self.track(scan_path, bus, outcome)

        fit = fit_visibility(scan)
        if fit.fallback:
            self.warn("Ajuste senoidal falhou; visibilidade por max-min", bus, outcome)
        self._log("V = %.4f ± %.4f", fit.visibility, fit.visibility_sigma)

        outcome.summary = {
            "fsr_valid": check.valid,
            "visibility": round(fit.visibility, 9),
            "visibility_sigma": round(fit.visibility_sigma, 9),
            "phase0": round(fit.phase0, 9),
            "method": fit.method,
            "equivalent_qber_x": round(visibility_to_qber(min(max(fit.visibility, 0.0), 1.0)), 9),
            "delay_ps": round(options.delay_ps, 6),
            "central_peak_rate_hz": round(central_counts / options.integration_s, 6),
        }
        self.write_yaml(
            {"fit": outcome.summary, "diagnostics": check.diagnostics, "warnings": check.warnings},
            out_dir / "franson_fit.yaml",
            bus,
            outcome,
        )
        return outcome
