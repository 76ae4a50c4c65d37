"""
Álgebra de estados de dois qubits de polarização.

Base normativa: {HH, HV, VH, VV}. O estado gerado pela fonte é
α|HH⟩ + e^{iφ}β|VV⟩, com φ a fase da amplitude |VV⟩ relativa a |HH⟩.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.sagnac.quantum.jones import PolarizationProjector

logger = logging.getLogger("sagnac.quantum.states")

BASIS_LABELS = ("HH", "HV", "VH", "VV")

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORMALIZATION_TOL = 1e-12


class StateError(ValueError):
    """Estado ou matriz densidade fisicamente inválido."""


class SagnacState(BaseModel):
    """Amplitudes (α, β) e fase φ do estado gerado."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., ge=0.0)
    beta: float = Field(..., ge=0.0)
    phi: float = Field(0.0, description="Fase relativa de |VV⟩ (rad)")

    @model_validator(mode="after")
    def _check_normalization(self) -> "SagnacState":
        norm = self.alpha**2 + self.beta**2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"α² + β² = {norm!r}, esperado 1")
        return self


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Operador 4×4 hermitiano, traço 1 e semidefinido positivo."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.entries, dtype=complex, copy=True)
        if matrix.shape != (4, 4):
            raise StateError(f"Matriz densidade deve ser 4x4, recebida {matrix.shape}")
        if np.linalg.norm(matrix - matrix.conj().T) > HERMITIAN_TOL:
            raise StateError("Matriz densidade não é hermitiana")
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise StateError(f"Traço {trace!r} difere de 1")
        min_eig = float(np.linalg.eigvalsh(matrix).min())
        if min_eig < -PSD_TOL:
            raise StateError(f"Autovalor negativo {min_eig:.3e}")
        matrix.setflags(write=False)
        object.__setattr__(self, "entries", matrix)

    @classmethod
    def from_pure(cls, vector: Sequence[complex]) -> "DensityMatrix":
        psi = np.asarray(vector, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise StateError("Vetor de estado nulo")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()))

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def to_report(self) -> List[List[List[float]]]:
        """4×4 pares (re, im) na base {HH, HV, VH, VV}."""
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]

    @classmethod
    def from_report(cls, payload: Sequence[Sequence[Sequence[float]]]) -> "DensityMatrix":
        matrix = np.array([[complex(re, im) for re, im in row] for row in payload])
        return cls(matrix)


def phi_plus() -> DensityMatrix:
    return DensityMatrix.from_pure(np.array([1, 0, 0, 1]) / np.sqrt(2))


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(np.eye(4) / 4)


def sagnac_state(state: SagnacState) -> DensityMatrix:
    """Matriz de posto 1 do estado α|HH⟩ + e^{iφ}β|VV⟩."""
    psi = np.array([state.alpha, 0.0, 0.0, state.beta * np.exp(1j * state.phi)], dtype=complex)
    return DensityMatrix(np.outer(psi, psi.conj()))


def pump_to_state(pump_jones: Sequence[complex]) -> SagnacState:
    """
    Converte a polarização da bomba no estado gerado.

    α = |⟨H|bomba⟩|, β = |⟨V|bomba⟩|, φ = arg⟨V|bomba⟩ − arg⟨H|bomba⟩ em [0, 2π).
    """
    vector = np.asarray(pump_jones, dtype=complex)
    if vector.shape != (2,):
        raise StateError(f"Polarização da bomba deve ter 2 componentes, recebida {vector.shape}")
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise StateError("Polarização da bomba nula")
    if abs(norm - 1.0) > 1e-9:
        logger.debug("Polarização da bomba renormalizada (norma %.6f)", norm)
    vector = vector / norm

    h, v = vector
    alpha, beta = abs(h), abs(v)
    scale = np.hypot(alpha, beta)
    phi = float(np.mod(np.angle(v) - np.angle(h), 2 * np.pi))
    if np.isclose(phi, 2 * np.pi):
        phi = 0.0
    return SagnacState(alpha=float(alpha / scale), beta=float(beta / scale), phi=phi)


def apply_local_unitaries(rho: DensityMatrix, u_a: np.ndarray, u_b: np.ndarray) -> DensityMatrix:
    """(U_a ⊗ U_b) ρ (U_a ⊗ U_b)†."""
    unitary = np.kron(u_a, u_b)
    rotated = unitary @ rho.entries @ unitary.conj().T
    return DensityMatrix(_hermitize(rotated))


def coincidence_probability(
    rho: DensityMatrix,
    a: PolarizationProjector,
    b: PolarizationProjector,
) -> float:
    """Regra de Born: Tr[ρ (|a⟩⟨a| ⊗ |b⟩⟨b|)], limitada a [0, 1]."""
    ket = np.kron(a.jones, b.jones)
    value = float(np.real(ket.conj() @ rho.entries @ ket))
    return min(max(value, 0.0), 1.0)


def fidelity_to_phi_plus(rho: DensityMatrix) -> float:
    ket = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return float(np.real(ket.conj() @ rho.entries @ ket))


def purity(rho: DensityMatrix) -> float:
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def werner_mix(p: float, rho: DensityMatrix) -> DensityMatrix:
    """p·ρ + (1 − p)·I/4."""
    if not 0.0 <= p <= 1.0:
        raise StateError(f"Parâmetro de Werner fora de [0, 1]: {p}")
    return DensityMatrix(p * rho.entries + (1 - p) * np.eye(4) / 4)


def concurrence(rho: DensityMatrix) -> float:
    """Concorrência de Wootters."""
    sigma_y = np.array([[0, -1j], [1j, 0]])
    flip = np.kron(sigma_y, sigma_y)
    rho_tilde = flip @ rho.entries.conj() @ flip
    eigs = np.linalg.eigvals(rho.entries @ rho_tilde)
    roots = np.sort(np.sqrt(np.clip(eigs.real, 0.0, None)))[::-1]
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def trace_distance(rho: np.ndarray | DensityMatrix, sigma: np.ndarray | DensityMatrix) -> float:
    """½‖ρ − σ‖₁ (aceita matrizes não físicas, ex.: inversão linear)."""
    left = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    right = sigma.entries if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    diff = _hermitize(left - right)
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())


def clamp_to_physical(matrix: np.ndarray, floor: float = 0.0) -> DensityMatrix:
    """Zera autovalores negativos (ou abaixo de ``floor``) e renormaliza o traço."""
    hermitian = _hermitize(np.asarray(matrix, dtype=complex))
    eigvals, eigvecs = np.linalg.eigh(hermitian)
    eigvals = np.clip(eigvals, floor, None)
    if eigvals.sum() <= 0:
        raise StateError("Matriz sem autovalores positivos")
    eigvals = eigvals / eigvals.sum()
    clamped = (eigvecs * eigvals) @ eigvecs.conj().T
    return DensityMatrix(_hermitize(clamped))


def _hermitize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)
