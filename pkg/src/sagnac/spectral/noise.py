"""Espectro de ruído Raman fornecido pelo usuário (arquivo CSV de duas colunas)."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger("sagnac.spectral.noise")


class NoiseSpectrum(BaseModel):
    """Amostras (λ nm, contagens/s/nm/mW) com interpolação linear e zero fora da faixa."""

    model_config = ConfigDict(frozen=True)

    samples: List[Tuple[float, float]] = Field(default_factory=list)

    @field_validator("samples")
    @classmethod
    def _validate_samples(cls, value: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for index, (wavelength, rate) in enumerate(value):
            if rate < 0:
                raise ValueError(f"Taxa negativa na linha {index}: {rate}")
            if index and wavelength <= value[index - 1][0]:
                raise ValueError(
                    f"Comprimentos de onda devem ser estritamente crescentes (linha {index}: {wavelength})"
                )
        return value

    def rate_at(self, wavelength_nm: float) -> float:
        if not self.samples:
            return 0.0
        wavelengths = np.array([s[0] for s in self.samples])
        rates = np.array([s[1] for s in self.samples])
        if wavelength_nm < wavelengths[0] or wavelength_nm > wavelengths[-1]:
            return 0.0
        return float(np.interp(wavelength_nm, wavelengths, rates))


def load_noise_spectrum(table: Iterable[Sequence[float]]) -> NoiseSpectrum:
    """Valida linhas (λ, taxa) e devolve um ``NoiseSpectrum``."""
    rows = []
    for index, row in enumerate(table):
        if len(row) != 2:
            raise ValueError(f"Linha {index} deve ter 2 colunas, tem {len(row)}")
        rows.append((float(row[0]), float(row[1])))
    return NoiseSpectrum(samples=rows)


def read_noise_spectrum_csv(path: Union[str, Path]) -> NoiseSpectrum:
    """Lê um CSV ``wavelength_nm,rate`` (cabeçalho opcional)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Espectro de ruído não encontrado: {path}")

    frame = pd.read_csv(path, header=None, comment="#")
    if frame.shape[1] != 2:
        raise ValueError(f"{path}: esperado 2 colunas, encontrado {frame.shape[1]}")
    # Cabeçalho textual na primeira linha
    if not _is_number(frame.iloc[0, 0]):
        frame = frame.iloc[1:]
    spectrum = load_noise_spectrum(frame.astype(float).itertuples(index=False, name=None))
    logger.info("Espectro de ruído carregado de %s (%d amostras)", path, len(spectrum.samples))
    return spectrum


def noise_rate(
    spectrum: NoiseSpectrum,
    wavelength_nm: float,
    bandwidth_nm: float,
    pump_power_mw: float,
) -> float:
    """Contagens/s de ruído Raman num canal: densidade × largura × potência."""
    return spectrum.rate_at(wavelength_nm) * bandwidth_nm * pump_power_mw


def _is_number(value: object) -> bool:
    try:
        float(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return False
    return True
