"""Modelo espectral da fonte, grade ITU e plano DWDM."""

from src.sagnac.spectral.grid import (
    ChannelPlan,
    ChannelPlanError,
    build_channel_plan,
    channel_bandwidth_nm,
    channel_wavelength_nm,
    conjugate_channel,
    frequency_to_wavelength,
    itu_channel_frequency,
    nearest_itu_channel,
    wavelength_to_frequency,
)
from src.sagnac.spectral.noise import (
    NoiseSpectrum,
    load_noise_spectrum,
    noise_rate,
    read_noise_spectrum_csv,
)
from src.sagnac.spectral.planning import channel_plan_table
from src.sagnac.spectral.source import (
    CRYSTAL_PRESETS,
    SourceParams,
    coupled_pair_rate,
    gaussian_shape,
    pair_rate,
    spdc_spectral_density,
)

__all__ = [
    "ChannelPlan",
    "ChannelPlanError",
    "build_channel_plan",
    "channel_bandwidth_nm",
    "channel_wavelength_nm",
    "conjugate_channel",
    "frequency_to_wavelength",
    "nearest_itu_channel",
    "itu_channel_frequency",
    "wavelength_to_frequency",
    "NoiseSpectrum",
    "load_noise_spectrum",
    "noise_rate",
    "read_noise_spectrum_csv",
    "channel_plan_table",
    "CRYSTAL_PRESETS",
    "SourceParams",
    "coupled_pair_rate",
    "gaussian_shape",
    "pair_rate",
    "spdc_spectral_density",
]
