"""Tabela do plano de canais com frequências, densidade espectral e taxas esperadas."""

from __future__ import annotations

from typing import Optional

import pandas as pd

from src.sagnac.spectral.grid import (
    ChannelPlan,
    channel_wavelength_nm,
    itu_channel_frequency,
)
from src.sagnac.spectral.noise import NoiseSpectrum, noise_rate
from src.sagnac.spectral.source import SourceParams, coupled_pair_rate, pair_rate, spdc_spectral_density

PLAN_COLUMNS = [
    "signal",
    "idler",
    "signal_thz",
    "idler_thz",
    "signal_nm",
    "idler_nm",
    "spectral_density",
    "pair_rate_hz",
    "coupled_pair_rate_hz",
    "noise_signal_hz",
    "noise_idler_hz",
]


def channel_plan_table(
    plan: ChannelPlan,
    params: SourceParams,
    *,
    pump_power_mw: float,
    channel_bandwidth_nm: float,
    noise: Optional[NoiseSpectrum] = None,
) -> pd.DataFrame:
    """Uma linha por par do plano, na ordem do plano."""
    noise = noise or NoiseSpectrum()
    rows = []
    for signal, idler in plan.pairs:
        signal_nm = channel_wavelength_nm(signal)
        idler_nm = channel_wavelength_nm(idler)
        rows.append(
            {
                "signal": signal,
                "idler": idler,
                "signal_thz": itu_channel_frequency(signal),
                "idler_thz": itu_channel_frequency(idler),
                "signal_nm": signal_nm,
                "idler_nm": idler_nm,
                "spectral_density": spdc_spectral_density(signal_nm, params),
                "pair_rate_hz": pair_rate(
                    pump_power_mw, channel_bandwidth_nm, params, center_wavelength_nm=signal_nm
                ),
                "coupled_pair_rate_hz": coupled_pair_rate(
                    pump_power_mw, channel_bandwidth_nm, params, center_wavelength_nm=signal_nm
                ),
                "noise_signal_hz": noise_rate(noise, signal_nm, channel_bandwidth_nm, pump_power_mw),
                "noise_idler_hz": noise_rate(noise, idler_nm, channel_bandwidth_nm, pump_power_mw),
            }
        )
    return pd.DataFrame(rows, columns=PLAN_COLUMNS)
