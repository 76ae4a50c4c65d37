"""
Modelo espectral e de taxa de geração de pares da fonte Sagnac.

O espectro SPDC é aproximado por uma gaussiana parametrizada pela FWHM
medida; a forma fica isolada em ``SpectralShape`` para ser trocada por um
modelo de casamento de fase mais fiel no futuro.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

SpectralShape = Callable[[float, float, float], float]


def gaussian_shape(wavelength_nm: float, center_nm: float, fwhm_nm: float) -> float:
    """Gaussiana normalizada em 1 no centro e 0.5 em centro ± FWHM/2."""
    delta = wavelength_nm - center_nm
    return math.exp(-4.0 * math.log(2.0) * (delta / fwhm_nm) ** 2)


class SourceParams(BaseModel):
    """Parâmetros da fonte (valores padrão: cristal PPLN 2)."""

    model_config = ConfigDict(frozen=True)

    pump_wavelength_nm: float = Field(1560.6, gt=0, description="Comprimento de onda da bomba (nm)")
    pump_linewidth_hz: float = Field(1e3, gt=0, description="Largura de linha da bomba (Hz)")
    spdc_fwhm_nm: float = Field(92.0, gt=0, description="FWHM do espectro SPDC (nm)")
    normalized_brightness_pairs_per_s_nm_mw2: float = Field(
        10.3e3, gt=0, description="Brilho normalizado (pares/s/nm/mW²)"
    )
    shg_efficiency_per_w: float = Field(0.392, gt=0, description="Eficiência SHG (/W)")
    smf_coupling: float = Field(0.62, gt=0, le=1.0, description="Acoplamento em SMF28 (fração)")
    spdc_efficiency: Optional[float] = Field(
        7.16e-8, gt=0, description="Eficiência de conversão SPDC (informativa)"
    )
    crystal_brightness_pairs_per_s_nm_mw: Optional[float] = Field(
        175e6, gt=0, description="Brilho do cristal isolado (informativo)"
    )


CRYSTAL_PRESETS: Dict[str, SourceParams] = {
    "ppln1": SourceParams(
        spdc_fwhm_nm=91.0,
        shg_efficiency_per_w=0.34,
        smf_coupling=0.655,
        spdc_efficiency=6.2e-8,
        crystal_brightness_pairs_per_s_nm_mw=152e6,
    ),
    "ppln2": SourceParams(),
}


def spdc_spectral_density(
    wavelength_nm: float,
    params: SourceParams,
    shape: SpectralShape = gaussian_shape,
) -> float:
    """Densidade espectral relativa (0..1) do SPDC, centrada na bomba."""
    return shape(wavelength_nm, params.pump_wavelength_nm, params.spdc_fwhm_nm)


def pair_rate(
    pump_power_mw: float,
    channel_bandwidth_nm: float,
    params: SourceParams,
    *,
    center_wavelength_nm: Optional[float] = None,
    shape: SpectralShape = gaussian_shape,
) -> float:
    """
    Taxa de pares gerados (pares/s) num canal.

    brilho × largura × potência², ponderado pela densidade espectral no
    centro do canal (por padrão o próprio comprimento de onda da bomba).
    """
    if pump_power_mw < 0:
        raise ValueError(f"Potência de bomba negativa: {pump_power_mw}")
    if channel_bandwidth_nm <= 0:
        raise ValueError(f"Largura de canal deve ser positiva: {channel_bandwidth_nm}")

    center = params.pump_wavelength_nm if center_wavelength_nm is None else center_wavelength_nm
    density = spdc_spectral_density(center, params, shape)
    return (
        params.normalized_brightness_pairs_per_s_nm_mw2
        * channel_bandwidth_nm
        * pump_power_mw**2
        * density
    )


def coupled_pair_rate(
    pump_power_mw: float,
    channel_bandwidth_nm: float,
    params: SourceParams,
    *,
    center_wavelength_nm: Optional[float] = None,
) -> float:
    """Taxa de pares já acoplados em fibra monomodo (perda de acoplamento nos dois fótons)."""
    return (
        pair_rate(
            pump_power_mw,
            channel_bandwidth_nm,
            params,
            center_wavelength_nm=center_wavelength_nm,
        )
        * params.smf_coupling**2
    )
