"""
Orçamento de enlace: perdas de fibra e de analisador até a taxa peneirada.

``basis_split`` é a probabilidade de o divisor enviar o fóton à base Z.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from src.sagnac.detection.models import DetectorModel
from src.sagnac.qkd.keyrate import DEFAULT_F_EC, secret_key_rate
from src.sagnac.spectral.grid import ChannelPlan, channel_bandwidth_nm, channel_wavelength_nm
from src.sagnac.spectral.source import SourceParams, coupled_pair_rate

logger = logging.getLogger("sagnac.qkd.link")


class LinkConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    fiber_length_km: float = Field(50.0, ge=0, description="Comprimento total do enlace (km), dividido entre os braços")
    loss_db_per_km: float = Field(0.2, ge=0, description="Atenuação da fibra (dB/km)")
    insertion_loss_db: float = Field(3.0, ge=0, description="Perda de inserção por analisador (dB)")
    basis_split: float = Field(0.5, gt=0, lt=1, description="Probabilidade da base Z no divisor")
    channel_pair: Tuple[int, int] = Field((19, 23), description="Par de canais ITU do enlace")
    x_postselection: float = Field(
        1.0, gt=0, le=1.0, description="Fração de eventos X mantidos após pós-seleção temporal"
    )
    noise_a_hz: float = Field(0.0, ge=0, description="Ruído no detector A (Hz)")
    noise_b_hz: float = Field(0.0, ge=0, description="Ruído no detector B (Hz)")

    def arm_loss_db(self) -> float:
        return self.fiber_length_km / 2.0 * self.loss_db_per_km + self.insertion_loss_db

    def arm_transmittance(self) -> float:
        return 10.0 ** (-self.arm_loss_db() / 10.0)


@dataclass(frozen=True)
class LinkBudget:
    transmittance_a: float
    transmittance_b: float
    coincidence_rate_hz: float
    sifted_z_hz: float
    sifted_x_hz: float
    singles_a_hz: float
    singles_b_hz: float

    @property
    def sifted_rate_hz(self) -> float:
        return self.sifted_z_hz + self.sifted_x_hz

    @property
    def z_fraction(self) -> float:
        total = self.sifted_rate_hz
        return self.sifted_z_hz / total if total > 0 else 0.5


def link_budget(cfg: LinkConfig, source_pair_rate_hz: float, det: DetectorModel) -> LinkBudget:
    """Coincidências = pares × T_a × T_b × η_a × η_b; peneiradas = coincidências × p(base igual)."""
    if source_pair_rate_hz < 0:
        raise ValueError(f"Taxa de pares negativa: {source_pair_rate_hz}")
    t_arm = cfg.arm_transmittance()
    coincidences = source_pair_rate_hz * t_arm * t_arm * det.efficiency * det.efficiency
    split = cfg.basis_split
    sifted_z = coincidences * split**2
    sifted_x = coincidences * (1.0 - split) ** 2 * cfg.x_postselection
    singles = source_pair_rate_hz * t_arm * det.efficiency + det.dark_rate_hz
    budget = LinkBudget(
        transmittance_a=t_arm,
        transmittance_b=t_arm,
        coincidence_rate_hz=coincidences,
        sifted_z_hz=sifted_z,
        sifted_x_hz=sifted_x,
        singles_a_hz=singles + cfg.noise_a_hz,
        singles_b_hz=singles + cfg.noise_b_hz,
    )
    logger.debug(
        "Enlace %s: T=%.4f coincidências=%.1f Hz peneiradas=%.1f Hz",
        ChannelPlan.label(cfg.channel_pair),
        t_arm,
        coincidences,
        budget.sifted_rate_hz,
    )
    return budget


MULTIPLEX_COLUMNS = [
    "signal",
    "idler",
    "coupled_pair_rate_hz",
    "coincidence_rate_hz",
    "sifted_rate_hz",
    "skr_bps",
]


def multiplexed_key_rates(
    plan: ChannelPlan,
    params: SourceParams,
    cfg: LinkConfig,
    det: DetectorModel,
    *,
    pump_power_mw: float,
    qx: float,
    qz: float,
    f_ec: float = DEFAULT_F_EC,
) -> pd.DataFrame:
    """Taxa de chave por par do plano, com o mesmo enlace em todos os pares."""
    rows = []
    bandwidth = channel_bandwidth_nm(params.pump_wavelength_nm, plan.channel_spacing_ghz)
    for signal, idler in plan.pairs:
        pairs = coupled_pair_rate(
            pump_power_mw, bandwidth, params, center_wavelength_nm=channel_wavelength_nm(signal)
        )
        budget = link_budget(cfg.model_copy(update={"channel_pair": (signal, idler)}), pairs, det)
        rows.append(
            {
                "signal": signal,
                "idler": idler,
                "coupled_pair_rate_hz": pairs,
                "coincidence_rate_hz": budget.coincidence_rate_hz,
                "sifted_rate_hz": budget.sifted_rate_hz,
                "skr_bps": secret_key_rate(budget.sifted_rate_hz, qx, qz, f_ec),
            }
        )
    return pd.DataFrame(rows, columns=MULTIPLEX_COLUMNS)


def multiplexing_gain(table: pd.DataFrame) -> float:
    """Taxa agregada sobre a taxa do primeiro par."""
    first = float(table["skr_bps"].iloc[0])
    return float(table["skr_bps"].sum() / first) if first > 0 else float("nan")
