"""
Inversão linear das 16 projeções.

Usa a base de produtos de Pauli Γ_μ = σ_j ⊗ σ_k / 2 (ortonormal no produto de
Hilbert-Schmidt). Com B_{νμ} = Tr(Π_ν Γ_μ), as matrizes duais
M_ν = Σ_μ (B⁻¹)_{μν} Γ_μ dão ρ ∝ Σ_ν M_ν n_ν. O resultado é hermitiano com
traço 1, mas pode ter autovalores negativos.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Sequence

import numpy as np

from src.sagnac.tomography.schedule import CountRecord, TomographyError, TomographySchedule, counts_vector

logger = logging.getLogger("sagnac.tomography.linear")

MAX_CONDITION = 1e12

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@lru_cache(maxsize=1)
def pauli_product_basis() -> np.ndarray:
    """16 matrizes 4×4 σ_j ⊗ σ_k / 2."""
    return np.array([np.kron(a, b) / 2.0 for a in _PAULI for b in _PAULI])


def design_matrix(schedule: TomographySchedule) -> np.ndarray:
    """B_{νμ} = ⟨ψ_ν|Γ_μ|ψ_ν⟩ (real, pois Γ_μ é hermitiana)."""
    kets = schedule.kets()
    basis = pauli_product_basis()
    return np.real(np.einsum("vi,mij,vj->vm", kets.conj(), basis, kets))


def dual_matrices(schedule: TomographySchedule) -> np.ndarray:
    b = design_matrix(schedule)
    condition = np.linalg.cond(b)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise TomographyError(f"Matriz de projeção singular (cond = {condition:.3e})")
    b_inv = np.linalg.inv(b)
    # M_ν = Σ_μ (B⁻¹)_{μν} Γ_μ
    return np.einsum("mv,mij->vij", b_inv, pauli_product_basis())


def invert_vector(values: np.ndarray, schedule: TomographySchedule) -> np.ndarray:
    """Inversão linear de um vetor de contagens (ou probabilidades) na ordem do esquema."""
    values = np.asarray(values, dtype=float)
    if values.shape != (len(schedule),):
        raise TomographyError(f"Vetor de contagens com forma {values.shape}")
    if values.sum() <= 0:
        raise TomographyError("Todas as contagens são nulas")
    duals = dual_matrices(schedule)
    unnormalized = np.einsum("v,vij->ij", values, duals)
    trace = np.trace(unnormalized).real
    if trace <= 0:
        raise TomographyError(f"Traço não positivo na inversão linear: {trace:.3e}")
    matrix = unnormalized / trace
    return 0.5 * (matrix + matrix.conj().T)


def linear_inversion(counts: Sequence[CountRecord], schedule: TomographySchedule) -> np.ndarray:
    return invert_vector(counts_vector(counts, schedule), schedule)
