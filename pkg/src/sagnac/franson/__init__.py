"""Emaranhamento energia-tempo: verificação de FSR e franjas de Franson."""

from src.sagnac.franson.analyzer import FransonConfig, FsrCheck, validate_fsr
from src.sagnac.franson.fringes import (
    FringeFitError,
    FringeScan,
    VisibilityFit,
    fit_visibility,
    read_scan_csv,
    simulate_fringe_scan,
    visibility_to_qber,
    write_scan_csv,
)

__all__ = [
    "FransonConfig",
    "FringeFitError",
    "FringeScan",
    "FsrCheck",
    "VisibilityFit",
    "fit_visibility",
    "read_scan_csv",
    "simulate_fringe_scan",
    "validate_fsr",
    "visibility_to_qber",
    "write_scan_csv",
]
