"""
Cálculo de Jones para os analisadores de polarização.

Convenções:
    * |R⟩ = (|H⟩ − i|V⟩)/√2, |L⟩ = (|H⟩ + i|V⟩)/√2
    * retardador com eixo rápido em θ: Rot(θ)·diag(1, e^{iΓ})·Rot(−θ)
    * lâmina de quarto de onda em π/4 leva |H⟩ em |R⟩
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Literal, Tuple

import numpy as np

WaveplateKind = Literal["quarter", "half"]
ProjectorLabel = Literal["H", "V", "D", "A", "R", "L"]

_SQRT2 = np.sqrt(2.0)

JONES_VECTORS: Dict[str, np.ndarray] = {
    "H": np.array([1.0, 0.0], dtype=complex),
    "V": np.array([0.0, 1.0], dtype=complex),
    "D": np.array([1.0, 1.0], dtype=complex) / _SQRT2,
    "A": np.array([1.0, -1.0], dtype=complex) / _SQRT2,
    "R": np.array([1.0, -1.0j], dtype=complex) / _SQRT2,
    "L": np.array([1.0, 1.0j], dtype=complex) / _SQRT2,
}

ORTHOGONAL: Dict[str, str] = {"H": "V", "V": "H", "D": "A", "A": "D", "R": "L", "L": "R"}

# Ângulos (quarto de onda, meia onda) do analisador QWP → HWP → PBS (porta H)
ANALYZER_SETTINGS: Dict[str, Tuple[float, float]] = {
    "H": (0.0, 0.0),
    "V": (0.0, np.pi / 4),
    "D": (np.pi / 4, np.pi / 8),
    "A": (np.pi / 4, -np.pi / 8),
    "R": (-np.pi / 4, 0.0),
    "L": (np.pi / 4, 0.0),
}


@dataclass(frozen=True, eq=False)
class PolarizationProjector:
    """Projetor de um fóton num estado de polarização rotulado."""

    label: str
    jones: np.ndarray

    def __post_init__(self) -> None:
        norm = np.linalg.norm(self.jones)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"Vetor de Jones de '{self.label}' não é unitário (norma {norm})")

    @classmethod
    def from_label(cls, label: str) -> "PolarizationProjector":
        if label not in JONES_VECTORS:
            raise ValueError(f"Rótulo de polarização desconhecido: '{label}'")
        return cls(label=label, jones=JONES_VECTORS[label])

    @property
    def orthogonal(self) -> "PolarizationProjector":
        return PolarizationProjector.from_label(ORTHOGONAL[self.label])

    @property
    def matrix(self) -> np.ndarray:
        return np.outer(self.jones, self.jones.conj())


def rotation(angle_rad: float) -> np.ndarray:
    c, s = np.cos(angle_rad), np.sin(angle_rad)
    return np.array([[c, -s], [s, c]], dtype=complex)


def retarder(retardance_rad: float, angle_rad: float) -> np.ndarray:
    """Matriz de Jones de um retardador linear com eixo rápido em ``angle_rad``."""
    core = np.diag([1.0, np.exp(1j * retardance_rad)])
    return rotation(angle_rad) @ core @ rotation(-angle_rad)


def waveplate_unitary(kind: WaveplateKind, angle_rad: float) -> np.ndarray:
    """Lâmina de quarto (Γ = π/2) ou meia onda (Γ = π)."""
    if kind == "quarter":
        return retarder(np.pi / 2, angle_rad)
    if kind == "half":
        return retarder(np.pi, angle_rad)
    raise ValueError(f"Tipo de lâmina desconhecido: '{kind}'")


def analyzer_projector(qwp_angle_rad: float, hwp_angle_rad: float, label: str = "custom") -> PolarizationProjector:
    """
    Estado projetado por QWP(q) → HWP(h) → PBS transmitindo H.

    A porta H seleciona U†|H⟩, com U = HWP·QWP.
    """
    unitary = waveplate_unitary("half", hwp_angle_rad) @ waveplate_unitary("quarter", qwp_angle_rad)
    state = unitary.conj().T @ JONES_VECTORS["H"]
    return PolarizationProjector(label=label, jones=state / np.linalg.norm(state))


def misalignment_unitary(angle_rad: float) -> np.ndarray:
    """Rotação de polarização residual (emulação dos canais extremos)."""
    return rotation(angle_rad)
