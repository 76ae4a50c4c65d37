"""Esquema de 16 medições, registros de contagem e simulação de contagens."""

from __future__ import annotations

import itertools
import logging
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.sagnac.quantum.jones import PolarizationProjector
from src.sagnac.quantum.states import DensityMatrix, coincidence_probability

logger = logging.getLogger("sagnac.tomography.schedule")

TOMOGRAPHY_BASES = ("H", "V", "D", "R")
COUNT_COLUMNS = ["setting_a", "setting_b", "coincidences", "singles_a", "singles_b", "integration_s"]


class TomographyError(RuntimeError):
    """Falha na reconstrução tomográfica."""


class TomographySchedule(BaseModel):
    """Lista ordenada de 16 pares de projetores."""

    model_config = ConfigDict(frozen=True)

    settings: Tuple[Tuple[str, str], ...]

    @field_validator("settings")
    @classmethod
    def _check_settings(cls, value: Tuple[Tuple[str, str], ...]) -> Tuple[Tuple[str, str], ...]:
        if len(value) != 16:
            raise ValueError(f"Esquema deve ter 16 configurações, recebidas {len(value)}")
        if len(set(value)) != 16:
            raise ValueError("Esquema contém configurações repetidas")
        for a, b in value:
            PolarizationProjector.from_label(a)
            PolarizationProjector.from_label(b)
        return value

    @classmethod
    def canonical(cls) -> "TomographySchedule":
        """{H, V, D, R}² em ordem linha-major."""
        return cls(settings=tuple(itertools.product(TOMOGRAPHY_BASES, TOMOGRAPHY_BASES)))

    def __len__(self) -> int:
        return len(self.settings)

    def projectors(self) -> List[Tuple[PolarizationProjector, PolarizationProjector]]:
        return [
            (PolarizationProjector.from_label(a), PolarizationProjector.from_label(b))
            for a, b in self.settings
        ]

    def kets(self) -> np.ndarray:
        """Matriz 16×4 com |a⟩⊗|b⟩ de cada configuração nas linhas."""
        return np.array([np.kron(pa.jones, pb.jones) for pa, pb in self.projectors()])


class CountRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    setting_index: int = Field(..., ge=0, le=15)
    coincidences: int = Field(..., ge=0)
    singles_a: int = Field(0, ge=0)
    singles_b: int = Field(0, ge=0)
    integration_s: float = Field(..., gt=0.0)


def counts_vector(counts: Sequence[CountRecord], schedule: TomographySchedule) -> np.ndarray:
    """Coincidências na ordem do esquema; exige um registro por configuração."""
    if len(counts) != len(schedule):
        raise TomographyError(
            f"Esperados {len(schedule)} registros de contagem, recebidos {len(counts)}"
        )
    vector = np.zeros(len(schedule))
    seen = set()
    for record in counts:
        if record.setting_index in seen:
            raise TomographyError(f"Configuração {record.setting_index} repetida")
        seen.add(record.setting_index)
        vector[record.setting_index] = record.coincidences
    return vector


def _marginal(rho: DensityMatrix, projector: PolarizationProjector, side: str) -> float:
    matrix = rho.entries.reshape(2, 2, 2, 2)
    reduced = np.einsum("ijkj->ik", matrix) if side == "a" else np.einsum("ijil->jl", matrix)
    return float(np.real(projector.jones.conj() @ reduced @ projector.jones))


def simulate_tomography_counts(
    rho: DensityMatrix,
    schedule: TomographySchedule,
    rate_hz: float,
    integration_s: float,
    seed: int,
    *,
    singles_rate_hz: float | None = None,
) -> List[CountRecord]:
    """
    Contagens Poisson por configuração, média rate·t·p(a, b).

    Singles seguem a probabilidade marginal de cada braço à taxa
    ``singles_rate_hz`` (por padrão a própria taxa de pares).
    """
    if rate_hz <= 0 or integration_s <= 0:
        raise ValueError("Taxa e tempo de integração devem ser positivos")

    rng = np.random.default_rng(seed)
    singles_rate = rate_hz if singles_rate_hz is None else singles_rate_hz
    records: List[CountRecord] = []
    for index, (pa, pb) in enumerate(schedule.projectors()):
        mean = rate_hz * integration_s * coincidence_probability(rho, pa, pb)
        coincidences = int(rng.poisson(mean))
        singles_a = int(rng.poisson(singles_rate * integration_s * _marginal(rho, pa, "a")))
        singles_b = int(rng.poisson(singles_rate * integration_s * _marginal(rho, pb, "b")))
        records.append(
            CountRecord(
                setting_index=index,
                coincidences=coincidences,
                singles_a=singles_a,
                singles_b=singles_b,
                integration_s=integration_s,
            )
        )
    return records


def expected_counts(rho: DensityMatrix, schedule: TomographySchedule, scale: float) -> np.ndarray:
    """Médias exatas scale·p(a, b), sem ruído de Poisson."""
    return np.array([scale * coincidence_probability(rho, pa, pb) for pa, pb in schedule.projectors()])


def records_from_vector(values: Sequence[float], integration_s: float = 1.0) -> List[CountRecord]:
    """Registros a partir de um vetor de contagens (arredondado para inteiro)."""
    return [
        CountRecord(setting_index=i, coincidences=int(round(v)), integration_s=integration_s)
        for i, v in enumerate(values)
    ]


def write_counts_csv(path: Union[str, Path], counts: Sequence[CountRecord], schedule: TomographySchedule) -> Path:
    rows = [
        {
            "setting_a": schedule.settings[r.setting_index][0],
            "setting_b": schedule.settings[r.setting_index][1],
            "coincidences": r.coincidences,
            "singles_a": r.singles_a,
            "singles_b": r.singles_b,
            "integration_s": r.integration_s,
        }
        for r in sorted(counts, key=lambda r: r.setting_index)
    ]
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows, columns=COUNT_COLUMNS).to_csv(
        target, index=False, float_format="%.6g", lineterminator="\n"
    )
    return target


def read_counts_csv(path: Union[str, Path], schedule: TomographySchedule) -> List[CountRecord]:
    frame = pd.read_csv(path)
    missing = [c for c in COUNT_COLUMNS if c not in frame.columns]
    if missing:
        raise TomographyError(f"Colunas ausentes em {path}: {missing}")
    index = {setting: i for i, setting in enumerate(schedule.settings)}
    records = []
    for row in frame.itertuples(index=False):
        key = (str(row.setting_a), str(row.setting_b))
        if key not in index:
            raise TomographyError(f"Configuração {key} fora do esquema")
        records.append(
            CountRecord(
                setting_index=index[key],
                coincidences=int(row.coincidences),
                singles_a=int(row.singles_a),
                singles_b=int(row.singles_b),
                integration_s=float(row.integration_s),
            )
        )
    return records
