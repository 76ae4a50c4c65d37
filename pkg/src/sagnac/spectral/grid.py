"""
Grade ITU de 100 GHz e planejamento de canais DWDM.

A grade é ancorada em f(n) = 190.0 + 0.1·n THz, o que reproduz as
atribuições ITU 21 ↔ 1560.6 nm, ITU 19 ↔ 1562.23 nm e ITU 23 ↔ 1558.98 nm.
Canais com n <= 0 são extrapolação da mesma grade (banda L).
"""

from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.constants import c as SPEED_OF_LIGHT

logger = logging.getLogger("sagnac.spectral.grid")

GRID_ORIGIN_THZ = 190.0
GRID_SPACING_THZ = 0.1
DEFAULT_MAX_ABS_CHANNEL = 60


class ChannelPlanError(ValueError):
    """Plano de canais impossível de construir ou inconsistente."""


def itu_channel_frequency(n: int) -> float:
    """Frequência central (THz) do canal ITU ``n`` na grade de 100 GHz."""
    return GRID_ORIGIN_THZ + GRID_SPACING_THZ * n


def frequency_to_wavelength(frequency_thz: float) -> float:
    """Comprimento de onda no vácuo (nm) para uma frequência em THz."""
    if frequency_thz <= 0:
        raise ValueError(f"Frequência deve ser positiva: {frequency_thz}")
    return SPEED_OF_LIGHT / (frequency_thz * 1e12) * 1e9


def wavelength_to_frequency(wavelength_nm: float) -> float:
    """Frequência (THz) para um comprimento de onda no vácuo em nm."""
    if wavelength_nm <= 0:
        raise ValueError(f"Comprimento de onda deve ser positivo: {wavelength_nm}")
    return SPEED_OF_LIGHT / (wavelength_nm * 1e-9) / 1e12


def channel_wavelength_nm(n: int) -> float:
    return frequency_to_wavelength(itu_channel_frequency(n))


def nearest_itu_channel(wavelength_nm: float) -> int:
    """Canal ITU mais próximo de um comprimento de onda."""
    offset_thz = wavelength_to_frequency(wavelength_nm) - GRID_ORIGIN_THZ
    return int(round(offset_thz / GRID_SPACING_THZ))


def channel_bandwidth_nm(center_nm: float, spacing_ghz: float = 100.0) -> float:
    """Largura espectral do canal: Δλ = λ²·Δν / c."""
    return (center_nm * 1e-9) ** 2 * (spacing_ghz * 1e9) / SPEED_OF_LIGHT * 1e9


def conjugate_channel(n: int, pump: int) -> int:
    """Canal conjugado por conservação de energia em torno do canal da bomba."""
    return 2 * pump - n


class ChannelPlan(BaseModel):
    """Lista ordenada de pares simétricos de canais em torno da bomba."""

    model_config = ConfigDict(frozen=True)

    pump_channel: int = Field(21, description="Canal ITU da bomba")
    pairs: List[Tuple[int, int]] = Field(..., description="Pares (sinal, idler) em ordem de distância")
    excluded: Set[int] = Field(default_factory=lambda: {20, 22}, description="Canais excluídos")
    channel_spacing_ghz: float = Field(100.0, gt=0, description="Espaçamento da grade")

    @model_validator(mode="after")
    def _validate_pairs(self) -> "ChannelPlan":
        if not self.pairs:
            raise ValueError("Plano de canais vazio")
        previous = 0
        for signal, idler in self.pairs:
            if signal + idler != 2 * self.pump_channel:
                raise ValueError(
                    f"Par ({signal}, {idler}) não é simétrico em torno do canal {self.pump_channel}"
                )
            if self.pump_channel in (signal, idler):
                raise ValueError(f"Par ({signal}, {idler}) contém o canal da bomba")
            touched = {signal, idler} & self.excluded
            if touched:
                raise ValueError(f"Par ({signal}, {idler}) usa canal excluído {sorted(touched)}")
            distance = abs(signal - self.pump_channel)
            if distance < previous:
                raise ValueError("Pares devem estar ordenados por distância crescente à bomba")
            previous = distance
        return self

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[Tuple[int, int]],
        pump: int = 21,
        excluded: Optional[Set[int]] = None,
        channel_spacing_ghz: float = 100.0,
    ) -> "ChannelPlan":
        """Constrói um plano explícito (ex.: ``--channels 19:23,18:24``)."""
        normalized = [(min(s, i), max(s, i)) for s, i in pairs]
        normalized.sort(key=lambda pair: pump - pair[0])
        try:
            return cls(
                pump_channel=pump,
                pairs=normalized,
                excluded=set(excluded) if excluded is not None else {20, 22},
                channel_spacing_ghz=channel_spacing_ghz,
            )
        except ValueError as exc:
            raise ChannelPlanError(str(exc)) from exc

    def __len__(self) -> int:
        return len(self.pairs)

    @staticmethod
    def label(pair: Tuple[int, int]) -> str:
        return f"ITU{pair[0]}-{pair[1]}"


def build_channel_plan(
    pump: int,
    n_pairs: int,
    excluded: Optional[Set[int]] = None,
    *,
    max_abs_channel: int = DEFAULT_MAX_ABS_CHANNEL,
    channel_spacing_ghz: float = 100.0,
) -> ChannelPlan:
    """
    Enumera os ``n_pairs`` pares simétricos mais próximos da bomba.

    Pares que tocam canais excluídos são pulados. Falha se a extrapolação
    necessária ultrapassar ``|n| <= max_abs_channel``.
    """
    if n_pairs < 1:
        raise ChannelPlanError(f"n_pairs deve ser >= 1 (recebido {n_pairs})")

    excluded = set(excluded or set())
    pairs: List[Tuple[int, int]] = []
    offset = 0
    while len(pairs) < n_pairs:
        offset += 1
        signal, idler = pump - offset, conjugate_channel(pump - offset, pump)
        if max(abs(signal), abs(idler)) > max_abs_channel:
            raise ChannelPlanError(
                f"Plano de {n_pairs} pares exige canais além de |n| <= {max_abs_channel} "
                f"(parou em ({signal}, {idler}))"
            )
        if signal in excluded or idler in excluded:
            logger.debug("Par (%d, %d) ignorado por exclusão", signal, idler)
            continue
        pairs.append((signal, idler))

    return ChannelPlan(
        pump_channel=pump,
        pairs=pairs,
        excluded=excluded,
        channel_spacing_ghz=channel_spacing_ghz,
    )
