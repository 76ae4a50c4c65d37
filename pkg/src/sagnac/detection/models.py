"""Tipos do módulo de detecção: detectores, fluxos de time-tags e coincidências."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# σ por detector tal que o pico de coincidência tenha FWHM de 50 ps
DEFAULT_JITTER_SIGMA_PS = 50.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)) * math.sqrt(2.0))


class DetectorModel(BaseModel):
    """SNSPD: eficiência, taxa de escuro, jitter gaussiano e tempo morto."""

    model_config = ConfigDict(frozen=True)

    efficiency: float = Field(0.80, ge=0.0, le=1.0, description="Eficiência de detecção")
    dark_rate_hz: float = Field(50.0, ge=0.0, description="Taxa de contagens de escuro (Hz)")
    jitter_sigma_ps: float = Field(
        DEFAULT_JITTER_SIGMA_PS, ge=0.0, description="Desvio padrão do jitter por detector (ps)"
    )
    dead_time_ns: float = Field(0.0, ge=0.0, description="Tempo morto (ns)")


class UnsortedStreamError(ValueError):
    """Fluxo de time-tags fora de ordem."""


@dataclass(frozen=True, eq=False)
class TimeTagStream:
    """Time-tags inteiros em picossegundos de um detector."""

    detector_id: int
    tags_ps: np.ndarray
    duration_ps: int

    def __post_init__(self) -> None:
        tags = np.array(self.tags_ps, dtype=np.int64, copy=True)
        if tags.ndim != 1:
            raise ValueError("tags_ps deve ser unidimensional")
        if not 0 <= self.detector_id <= 255:
            raise ValueError(f"detector_id fora de [0, 255]: {self.detector_id}")
        if tags.size and (tags[0] < 0 or tags[-1] > self.duration_ps):
            raise ValueError("Time-tags fora de [0, duração]")
        tags.setflags(write=False)
        object.__setattr__(self, "tags_ps", tags)

    def __len__(self) -> int:
        return int(self.tags_ps.size)

    @property
    def rate_hz(self) -> float:
        if self.duration_ps <= 0:
            return 0.0
        return len(self) / (self.duration_ps * 1e-12)

    def is_sorted(self, strict: bool = False) -> bool:
        diffs = np.diff(self.tags_ps)
        return bool(np.all(diffs > 0)) if strict else bool(np.all(diffs >= 0))


@dataclass(frozen=True)
class CoincidenceResult:
    true_window_counts: int
    accidental_estimate: float
    window_ps: int
    relative_delay_ps: int

    def __post_init__(self) -> None:
        if self.true_window_counts < 0 or self.accidental_estimate < 0:
            raise ValueError("Contagens de coincidência negativas")

    @property
    def car(self) -> float:
        """Razão coincidência/acidental (inf sem acidentais)."""
        if self.accidental_estimate == 0:
            return math.inf if self.true_window_counts else math.nan
        return self.true_window_counts / self.accidental_estimate
