"""Cenário ``plan``: tabela do plano DWDM com taxas esperadas por par."""

from pathlib import Path

from src.sagnac.config import ScenarioConfig
from src.sagnac.interfaces import EventBus, ScenarioOutcome
from src.sagnac.scenarios.base import BaseScenario
from src.sagnac.spectral.grid import channel_bandwidth_nm
from src.sagnac.spectral.noise import NoiseSpectrum, read_noise_spectrum_csv
from src.sagnac.spectral.planning import channel_plan_table


def load_noise(cfg: ScenarioConfig) -> NoiseSpectrum:
    if cfg.plan.noise_spectrum_csv:
        return read_noise_spectrum_csv(cfg.plan.noise_spectrum_csv)
    return NoiseSpectrum()


class PlanScenario(BaseScenario):
    @property
    def command(self) -> str:
        return "plan"

    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        outcome = ScenarioOutcome()
        plan = cfg.plan.build()
        bandwidth = channel_bandwidth_nm(cfg.source.pump_wavelength_nm, plan.channel_spacing_ghz)
        table = channel_plan_table(
            plan,
            cfg.source,
            pump_power_mw=cfg.plan.pump_power_mw,
            channel_bandwidth_nm=bandwidth,
            noise=load_noise(cfg),
        )
        self._log("%d pares, primeiro par %s", len(plan), plan.pairs[0])
        self.write_frame(table, out_dir / "channel_plan.csv", bus, outcome)
        outcome.summary = {
            "pairs": len(plan),
            "first_pair": list(plan.pairs[0]),
            "channel_bandwidth_nm": round(bandwidth, 9),
            "total_coupled_pair_rate_hz": round(float(table["coupled_pair_rate_hz"].sum()), 3),
        }
        return outcome
