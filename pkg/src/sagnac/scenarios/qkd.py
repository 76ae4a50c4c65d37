"""Cenário ``qkd``: orçamento do enlace, sessão longa e taxas multiplexadas."""

from pathlib import Path

from src.sagnac.config import ScenarioConfig
from src.sagnac.interfaces import EventBus, ScenarioOutcome
from src.sagnac.qkd.link import link_budget, multiplexed_key_rates, multiplexing_gain
from src.sagnac.qkd.session import simulate_session
from src.sagnac.scenarios.base import BaseScenario
from src.sagnac.spectral.grid import channel_bandwidth_nm, channel_wavelength_nm
from src.sagnac.spectral.source import coupled_pair_rate


class QkdScenario(BaseScenario):
    @property
    def command(self) -> str:
        return "qkd"

    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        outcome = ScenarioOutcome()
        options = cfg.qkd
        link = options.link
        plan = cfg.plan.build()
        detector = cfg.detectors.a

        bandwidth = channel_bandwidth_nm(cfg.source.pump_wavelength_nm, plan.channel_spacing_ghz)
        source_rate = coupled_pair_rate(
            cfg.plan.pump_power_mw,
            bandwidth,
            cfg.source,
            center_wavelength_nm=channel_wavelength_nm(min(link.channel_pair)),
        )
        budget = link_budget(link, source_rate, detector)
        sifted = options.sifted_rate_hz if options.sifted_rate_hz is not None else budget.sifted_rate_hz
        self._log("Taxa peneirada %.1f Hz (pares acoplados %.3g Hz)", sifted, source_rate)

        report = simulate_session(
            link,
            options.duration_s,
            options.bin_s,
            options.base_vis_x,
            options.base_err_z,
            options.all_events(),
            cfg.seed,
            sifted_rate_hz=sifted,
            f_ec=options.f_ec,
        )
        report.write_csv(out_dir / "qkd_session.csv")
        self.track(out_dir / "qkd_session.csv", bus, outcome)

        qx = (1.0 - options.base_vis_x) / 2.0
        table = multiplexed_key_rates(
            plan,
            cfg.source,
            link,
            detector,
            pump_power_mw=cfg.plan.pump_power_mw,
            qx=min(qx, 0.5),
            qz=options.base_err_z,
            f_ec=options.f_ec,
        )
        self.write_frame(table, out_dir / "qkd_multiplexed.csv", bus, outcome)

        summary = report.summary()
        if summary["mean_skr_bps"] == 0:
            self.warn("Taxa de chave nula em toda a sessão", bus, outcome)
        outcome.summary = {
            **summary,
            "sifted_rate_hz": round(sifted, 6),
            "coincidence_rate_hz": round(budget.coincidence_rate_hz, 6),
            "arm_transmittance": round(budget.transmittance_a, 9),
            "multiplexing_gain": round(multiplexing_gain(table), 6),
        }
        self.write_yaml({"summary": outcome.summary}, out_dir / "qkd_summary.yaml", bus, outcome)
        return outcome
