"""Cenário ``tomography``: varredura de tomografia sobre o plano de canais."""

from pathlib import Path
from typing import List

from src.sagnac.config import ScenarioConfig
from src.sagnac.interfaces import EventBus, ScenarioEventType, ScenarioOutcome
from src.sagnac.quantum.states import DensityMatrix, phi_plus, werner_mix
from src.sagnac.scenarios.base import BaseScenario
from src.sagnac.spectral.grid import ChannelPlan
from src.sagnac.tomography.schedule import TomographySchedule
from src.sagnac.tomography.sweep import SweepEntry, run_channel_sweep


class TomographyScenario(BaseScenario):
    @property
    def command(self) -> str:
        return "tomography"

    def _true_state(self, cfg: ScenarioConfig) -> DensityMatrix:
        if cfg.tomography.state == "phi_plus":
            return phi_plus()
        return werner_mix(cfg.tomography.werner_p, phi_plus())

    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        outcome = ScenarioOutcome()
        options = cfg.tomography
        plan = cfg.plan.build()
        schedule = TomographySchedule.canonical()
        state = self._true_state(cfg)
        states: List[DensityMatrix] = [state] * len(plan)

        for pair in plan.pairs:
            bus.emit_simple(ScenarioEventType.CHANNEL_START, {"command": self.command, "pair": ChannelPlan.label(pair)})

        def on_entry(entry: SweepEntry) -> None:
            label = ChannelPlan.label(entry.pair)
            if entry.ok:
                bus.emit_simple(
                    ScenarioEventType.CHANNEL_COMPLETE,
                    {
                        "command": self.command,
                        "pair": label,
                        "fidelity": round(entry.result.fidelity, 5),
                        "purity": round(entry.result.purity, 5),
                    },
                )
                if not entry.result.converged:
                    self.warn(f"{label}: MLE não convergiu ({entry.result.message})", bus, outcome)
            else:
                bus.emit_simple(
                    ScenarioEventType.CHANNEL_ERROR,
                    {"command": self.command, "pair": label, "error": entry.error},
                )
                outcome.warnings.append(f"{label}: {entry.error}")

        report = run_channel_sweep(
            states,
            plan,
            schedule,
            options.rate_hz,
            options.integration_s,
            cfg.seed,
            misalignment_rad=[options.misalignment_for(pair) for pair in plan.pairs],
            bootstrap=options.bootstrap,
            workers=options.workers,
            on_entry=on_entry,
        )

        self.write_frame(report.to_frame(), out_dir / "tomography_fidelity.csv", bus, outcome)
        matrices = {
            ChannelPlan.label(entry.pair): entry.result.summary() for entry in report.succeeded
        }
        self.write_yaml({"channels": matrices, "summary": report.summary()}, out_dir / "tomography_states.yaml", bus, outcome)
        outcome.summary = report.summary()
        return outcome
