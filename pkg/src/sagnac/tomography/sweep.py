"""Tomografia independente por par de canais do plano DWDM."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.sagnac.observability import get_tracer
from src.sagnac.quantum.jones import misalignment_unitary
from src.sagnac.quantum.states import DensityMatrix, apply_local_unitaries
from src.sagnac.spectral.grid import ChannelPlan
from src.sagnac.tomography.mle import DEFAULT_BOOTSTRAP, TomographyResult, mle_reconstruct
from src.sagnac.tomography.schedule import TomographySchedule, simulate_tomography_counts

logger = logging.getLogger("sagnac.tomography.sweep")

Pair = Tuple[int, int]
SWEEP_COLUMNS = [
    "signal",
    "idler",
    "fidelity",
    "fidelity_sigma",
    "purity",
    "purity_sigma",
    "converged",
    "error",
]


@dataclass(frozen=True)
class SweepEntry:
    pair: Pair
    result: Optional[TomographyResult]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.result is not None and self.error is None


@dataclass(frozen=True)
class SweepReport:
    entries: Tuple[SweepEntry, ...]

    @property
    def succeeded(self) -> List[SweepEntry]:
        return [e for e in self.entries if e.ok]

    @property
    def failures(self) -> List[SweepEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def has_warnings(self) -> bool:
        return bool(self.failures) or any(not e.result.converged for e in self.succeeded)

    def _values(self, attribute: str) -> np.ndarray:
        return np.array([getattr(e.result, attribute) for e in self.succeeded])

    @property
    def min_fidelity(self) -> float:
        values = self._values("fidelity")
        return float(values.min()) if values.size else float("nan")

    @property
    def mean_fidelity(self) -> float:
        values = self._values("fidelity")
        return float(values.mean()) if values.size else float("nan")

    @property
    def min_purity(self) -> float:
        values = self._values("purity")
        return float(values.min()) if values.size else float("nan")

    @property
    def mean_purity(self) -> float:
        values = self._values("purity")
        return float(values.mean()) if values.size else float("nan")

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for entry in self.entries:
            result = entry.result
            rows.append(
                {
                    "signal": entry.pair[0],
                    "idler": entry.pair[1],
                    "fidelity": result.fidelity if result else np.nan,
                    "fidelity_sigma": result.fidelity_sigma if result else np.nan,
                    "purity": result.purity if result else np.nan,
                    "purity_sigma": result.purity_sigma if result else np.nan,
                    "converged": bool(result.converged) if result else False,
                    "error": entry.error or "",
                }
            )
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    def write_csv(self, path: Union[str, Path]) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(target, index=False, float_format="%.6f", lineterminator="\n")
        return target

    def summary(self) -> Dict[str, float | int]:
        return {
            "channels": len(self.entries),
            "failed": len(self.failures),
            "min_fidelity": round(self.min_fidelity, 6),
            "mean_fidelity": round(self.mean_fidelity, 6),
            "min_purity": round(self.min_purity, 6),
            "mean_purity": round(self.mean_purity, 6),
        }


def _channel_state(state: DensityMatrix, misalignment_rad: float) -> DensityMatrix:
    if misalignment_rad == 0.0:
        return state
    return apply_local_unitaries(state, np.eye(2), misalignment_unitary(misalignment_rad))


def run_channel_sweep(
    states: Sequence[DensityMatrix],
    plan: ChannelPlan,
    schedule: TomographySchedule,
    rate_hz: float,
    integration_s: float,
    seed: int,
    *,
    misalignment_rad: Optional[Sequence[float]] = None,
    bootstrap: int = DEFAULT_BOOTSTRAP,
    workers: int = 1,
    on_entry: Optional[Callable[[SweepEntry], None]] = None,
) -> SweepReport:
    """
    Simula e reconstrói cada par do plano.

    Falhas por canal são registradas na entrada correspondente e não
    interrompem a varredura. A ordem do relatório é a do plano, qualquer que
    seja ``workers``.
    """
    if len(states) != len(plan):
        raise ValueError(f"Esperado um estado por par ({len(plan)}), recebidos {len(states)}")
    angles = list(misalignment_rad) if misalignment_rad is not None else [0.0] * len(plan)
    if len(angles) != len(plan):
        raise ValueError("misalignment_rad deve ter um ângulo por par")

    children = np.random.SeedSequence(seed).spawn(len(plan))
    tracer = get_tracer()

    def process(index: int) -> SweepEntry:
        pair = plan.pairs[index]
        with tracer.start_as_current_span("tomography.channel") as span:
            span.set_attribute("sagnac.pair", ChannelPlan.label(pair))
            entry = reconstruct(index, pair)
            span.set_attribute("sagnac.ok", entry.ok)
            return entry

    def reconstruct(index: int, pair: Pair) -> SweepEntry:
        count_seed, fit_seed = (int(s) for s in children[index].generate_state(2))
        try:
            state = _channel_state(states[index], angles[index])
            counts = simulate_tomography_counts(state, schedule, rate_hz, integration_s, count_seed)
            result = mle_reconstruct(counts, schedule, seed=fit_seed, bootstrap=bootstrap)
            logger.info(
                "%s: F=%.4f±%.4f P=%.4f±%.4f",
                ChannelPlan.label(pair),
                result.fidelity,
                result.fidelity_sigma,
                result.purity,
                result.purity_sigma,
            )
            return SweepEntry(pair=pair, result=result)
        except Exception as exc:  # noqa: BLE001 - falha isolada por canal
            logger.error("%s: tomografia falhou: %s", ChannelPlan.label(pair), exc)
            return SweepEntry(pair=pair, result=None, error=str(exc))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(process, range(len(plan))))
    else:
        entries = [process(i) for i in range(len(plan))]

    if on_entry is not None:
        for entry in entries:
            on_entry(entry)
    return SweepReport(entries=tuple(entries))
