"""Cenário ``timetags``: fluxos Monte-Carlo do primeiro par, coincidências e histograma."""

from pathlib import Path

import pandas as pd

from src.sagnac.config import ScenarioConfig
from src.sagnac.detection.coincidence import accidental_rate, count_coincidences, delay_histogram
from src.sagnac.detection.io import export_csv, write_ttag
from src.sagnac.detection.simulate import simulate_pair_streams
from src.sagnac.interfaces import EventBus, ScenarioOutcome
from src.sagnac.scenarios.base import BaseScenario
from src.sagnac.scenarios.plan import load_noise
from src.sagnac.spectral.grid import channel_bandwidth_nm, channel_wavelength_nm
from src.sagnac.spectral.noise import noise_rate
from src.sagnac.spectral.source import coupled_pair_rate


class TimetagsScenario(BaseScenario):
    @property
    def command(self) -> str:
        return "timetags"

    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        outcome = ScenarioOutcome()
        options = cfg.timetags
        plan = cfg.plan.build()
        signal, idler = plan.pairs[0]
        bandwidth = channel_bandwidth_nm(cfg.source.pump_wavelength_nm, plan.channel_spacing_ghz)

        pair_rate = options.pair_rate_hz
        if pair_rate is None:
            pair_rate = coupled_pair_rate(
                cfg.plan.pump_power_mw, bandwidth, cfg.source, center_wavelength_nm=channel_wavelength_nm(signal)
            )
        noise = load_noise(cfg)
        noise_a = noise_rate(noise, channel_wavelength_nm(signal), bandwidth, cfg.plan.pump_power_mw)
        noise_b = noise_rate(noise, channel_wavelength_nm(idler), bandwidth, cfg.plan.pump_power_mw)

        stream_a, stream_b = simulate_pair_streams(
            pair_rate,
            noise_a,
            noise_b,
            options.duration_s,
            cfg.detectors.a,
            cfg.detectors.b,
            cfg.seed,
            max_events=options.max_events,
        )
        self._log("%d tags (A), %d tags (B)", len(stream_a), len(stream_b))

        write_ttag(out_dir / "timetags.ttag", [stream_a, stream_b])
        self.track(out_dir / "timetags.ttag", bus, outcome)
        if options.export_csv:
            export_csv(out_dir / "timetags.csv", [stream_a, stream_b])
            self.track(out_dir / "timetags.csv", bus, outcome)

        result = count_coincidences(
            stream_a, stream_b, options.window_ps, 0, accidental_offset_ps=options.accidental_offset_ps
        )
        centers, counts = delay_histogram(stream_a, stream_b, options.histogram_bin_ps, options.histogram_span_ps)
        self.write_frame(
            pd.DataFrame({"delay_ps": centers, "counts": counts}), out_dir / "delay_histogram.csv", bus, outcome
        )

        expected_accidentals = (
            accidental_rate(stream_a.rate_hz, stream_b.rate_hz, options.window_ps) * options.duration_s
        )
        outcome.summary = {
            "pair": [signal, idler],
            "pair_rate_hz": round(pair_rate, 6),
            "tags_a": len(stream_a),
            "tags_b": len(stream_b),
            "coincidences": result.true_window_counts,
            "accidentals_offset_window": round(result.accidental_estimate, 6),
            "accidentals_expected": round(expected_accidentals, 6),
            "car": round(result.car, 6),
            "window_ps": result.window_ps,
        }
        self.write_yaml({"summary": outcome.summary}, out_dir / "coincidences.yaml", bus, outcome)
        return outcome
