"""
Franjas de interferência de dois fótons e extração de visibilidade.

Modelo de contagem: média·(1 + V·cos(φ + φ0)), cuja média sobre a fase é
a própria média. O ajuste usa a forma linear a + c·cosφ + s·sinφ, de onde
V = √(c² + s²)/a e φ0 = atan2(−s, c).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Sequence, Union

import numpy as np
import pandas as pd
from scipy.optimize import curve_fit

logger = logging.getLogger("sagnac.franson.fringes")

MIN_PHASE_POINTS = 5
FitMethod = Literal["least_squares", "max_min"]


class FringeFitError(ValueError):
    """Varredura de franjas inutilizável para ajuste."""


@dataclass(frozen=True, eq=False)
class FringeScan:
    phases_rad: np.ndarray
    coincidences: np.ndarray
    integration_s: float = 0.5

    def __post_init__(self) -> None:
        phases = np.array(self.phases_rad, dtype=float, copy=True)
        counts = np.array(self.coincidences, dtype=np.int64, copy=True)
        if phases.shape != counts.shape or phases.ndim != 1:
            raise ValueError("Fases e contagens devem ser vetores de mesmo tamanho")
        if np.any(counts < 0):
            raise ValueError("Contagens negativas na varredura")
        if self.integration_s <= 0:
            raise ValueError(f"Tempo de integração deve ser positivo: {self.integration_s}")
        phases.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "phases_rad", phases)
        object.__setattr__(self, "coincidences", counts)

    def __len__(self) -> int:
        return int(self.phases_rad.size)


@dataclass(frozen=True)
class VisibilityFit:
    visibility: float
    visibility_sigma: float
    phase0: float
    method: FitMethod = "least_squares"

    @property
    def fallback(self) -> bool:
        return self.method != "least_squares"

    def __iter__(self):
        return iter((self.visibility, self.visibility_sigma, self.phase0))


def fringe_mean(mean_counts: float, visibility: float, phases: np.ndarray, phase0: float = 0.0) -> np.ndarray:
    return mean_counts * (1.0 + visibility * np.cos(np.asarray(phases, dtype=float) + phase0))


def simulate_fringe_scan(
    true_visibility: float,
    mean_counts: float,
    phases: Sequence[float],
    seed: int,
    *,
    phase0: float = 0.0,
    integration_s: float = 0.5,
) -> FringeScan:
    if not 0.0 <= true_visibility <= 1.0:
        raise ValueError(f"Visibilidade fora de [0, 1]: {true_visibility}")
    if mean_counts <= 0:
        raise ValueError(f"Contagem média deve ser positiva: {mean_counts}")
    phases = np.asarray(phases, dtype=float)
    means = np.clip(fringe_mean(mean_counts, true_visibility, phases, phase0), 0.0, None)
    counts = np.random.default_rng(seed).poisson(means)
    return FringeScan(phases_rad=phases, coincidences=counts, integration_s=integration_s)


def check_coverage(phases: np.ndarray) -> None:
    """Exige ≥ 5 pontos cobrindo um período inteiro."""
    if phases.size < MIN_PHASE_POINTS:
        raise FringeFitError(f"São necessários ≥ {MIN_PHASE_POINTS} pontos de fase, recebidos {phases.size}")
    unique = np.unique(phases)
    if unique.size < MIN_PHASE_POINTS:
        raise FringeFitError("Pontos de fase repetidos demais")
    span = float(unique[-1] - unique[0])
    # amostragem sem o ponto final (linspace endpoint=False) também cobre o período
    covered = span * unique.size / (unique.size - 1)
    if covered < 2 * math.pi * (1 - 1e-9):
        raise FringeFitError(f"Varredura cobre {covered:.3f} rad, menos de um período")


def _linear_model(phi: np.ndarray, a: float, c: float, s: float) -> np.ndarray:
    return a + c * np.cos(phi) + s * np.sin(phi)


def _max_min(counts: np.ndarray) -> VisibilityFit:
    high, low = float(counts.max()), float(counts.min())
    visibility = (high - low) / (high + low)
    return VisibilityFit(visibility=visibility, visibility_sigma=float("nan"), phase0=float("nan"), method="max_min")


def fit_visibility(scan: FringeScan) -> VisibilityFit:
    """
    Ajuste senoidal por mínimos quadrados ponderados (σ = √max(n, 1)).

    Se o ajuste falha, usa (max − min)/(max + min) e marca ``method``.
    """
    phases = scan.phases_rad
    counts = scan.coincidences.astype(float)
    if counts.sum() == 0:
        raise FringeFitError("Varredura com todas as contagens nulas")
    check_coverage(phases)

    sigma = np.sqrt(np.maximum(counts, 1.0))
    # modelo linear em (a, c, s): a solução ponderada fechada já é o ótimo,
    # curve_fit refina e fornece a covariância
    design = np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)]) / sigma[:, None]
    start, *_ = np.linalg.lstsq(design, counts / sigma, rcond=None)
    try:
        params, covariance = curve_fit(
            _linear_model,
            phases,
            counts,
            p0=start,
            sigma=sigma,
            absolute_sigma=True,
        )
    except (RuntimeError, ValueError) as exc:
        logger.warning("Ajuste senoidal falhou (%s); usando max-min", exc)
        return _max_min(counts)

    a, c, s = (float(p) for p in params)
    if a <= 0 or not np.all(np.isfinite(covariance)):
        logger.warning("Ajuste senoidal degenerado (a=%.3g); usando max-min", a)
        return _max_min(counts)

    amplitude = math.hypot(c, s)
    visibility = amplitude / a
    if amplitude > 0:
        jacobian = np.array([-visibility / a, c / (a * amplitude), s / (a * amplitude)])
        variance = float(jacobian @ covariance @ jacobian)
    else:
        variance = float((covariance[1, 1] + covariance[2, 2]) / 2.0) / a**2
    phase0 = math.atan2(-s, c)
    return VisibilityFit(
        visibility=visibility,
        visibility_sigma=math.sqrt(max(variance, 0.0)),
        phase0=phase0,
    )


def visibility_to_qber(v: float) -> float:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"Visibilidade fora de [0, 1]: {v}")
    return (1.0 - v) / 2.0


def write_scan_csv(path: Union[str, Path], scan: FringeScan) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"phase_rad": scan.phases_rad, "counts": scan.coincidences})
    with target.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# integration_s={scan.integration_s:g}\n")
        frame.to_csv(handle, index=False, float_format="%.9f", lineterminator="\n")
    return target


def read_scan_csv(path: Union[str, Path]) -> FringeScan:
    source = Path(path)
    with source.open(encoding="utf-8") as handle:
        header = handle.readline().strip()
    if not header.startswith("# integration_s="):
        raise FringeFitError(f"Cabeçalho de integração ausente em {source}")
    integration_s = float(header.split("=", 1)[1])
    frame = pd.read_csv(source, comment="#")
    return FringeScan(
        phases_rad=frame["phase_rad"].to_numpy(dtype=float),
        coincidences=frame["counts"].to_numpy(dtype=np.int64),
        integration_s=integration_s,
    )
