"""Configuração do analisador Franson e verificação da hierarquia Δν_p < FSR < Δν_s."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger("sagnac.franson.analyzer")

JITTER_MARGIN = 10.0


class FransonConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    pump_linewidth_hz: float = Field(1e3, gt=0, description="Largura de linha da bomba Δν_p (Hz)")
    fsr_hz: float = Field(1e9, gt=0, description="FSR do interferômetro desbalanceado (Hz)")
    photon_bandwidth_hz: float = Field(100e9, gt=0, description="Largura espectral dos fótons Δν_s (Hz)")
    detector_jitter_ps: float = Field(50.0, gt=0, description="Jitter do sistema de detecção (ps)")
    postselection_factor: float = Field(
        0.5, gt=0, le=1.0, description="Fração das coincidências no pico central"
    )

    @property
    def delay_ps(self) -> float:
        """Atraso do interferômetro 1/FSR em ps."""
        return 1e12 / self.fsr_hz


@dataclass(frozen=True)
class FsrCheck:
    valid: bool
    diagnostics: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate_fsr(cfg: FransonConfig) -> FsrCheck:
    """Desigualdades estritas; avisa quando 1/FSR < 10× jitter."""
    diagnostics: List[str] = []
    warnings: List[str] = []

    if not cfg.pump_linewidth_hz < cfg.fsr_hz:
        diagnostics.append(
            f"FSR ({cfg.fsr_hz:.3g} Hz) não excede a largura da bomba ({cfg.pump_linewidth_hz:.3g} Hz)"
        )
    if not cfg.fsr_hz < cfg.photon_bandwidth_hz:
        diagnostics.append(
            f"FSR ({cfg.fsr_hz:.3g} Hz) não é menor que a largura dos fótons "
            f"({cfg.photon_bandwidth_hz:.3g} Hz)"
        )
    if cfg.delay_ps < JITTER_MARGIN * cfg.detector_jitter_ps:
        warnings.append(
            f"Atraso 1/FSR = {cfg.delay_ps:.3g} ps não é muito maior que o jitter "
            f"({cfg.detector_jitter_ps:.3g} ps): picos satélites se sobrepõem"
        )

    for message in warnings:
        logger.warning(message)
    return FsrCheck(valid=not diagnostics, diagnostics=diagnostics, warnings=warnings)
