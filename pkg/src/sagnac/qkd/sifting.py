"""
Peneiramento de coincidências rotuladas por base.

Convenção de bits: na base Z o bit é o time-bin (0 = cedo, 1 = tarde); na
base X é a porta de saída do interferômetro (0 = construtiva,
1 = destrutiva).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.sagnac.detection.coincidence import match_coincidences
from src.sagnac.detection.models import DetectorModel, TimeTagStream
from src.sagnac.detection.simulate import PS_PER_S, apply_jitter, poisson_arrivals

logger = logging.getLogger("sagnac.qkd.sifting")

BASIS_Z = 0
BASIS_X = 1


class SiftingError(ValueError):
    """Fluxo sem rótulos de base/resultado coerentes."""


@dataclass(frozen=True, eq=False)
class LabeledTagStream:
    stream: TimeTagStream
    bases: Optional[np.ndarray]
    outcomes: Optional[np.ndarray]

    def validate(self) -> None:
        if self.bases is None or self.outcomes is None:
            raise SiftingError(f"Fluxo do detector {self.stream.detector_id} sem rótulos")
        size = len(self.stream)
        if np.shape(self.bases) != (size,) or np.shape(self.outcomes) != (size,):
            raise SiftingError(
                f"Rótulos com tamanho diferente do fluxo ({size} tags) no detector {self.stream.detector_id}"
            )
        if not np.isin(self.bases, (BASIS_Z, BASIS_X)).all():
            raise SiftingError("Base desconhecida (esperado 0 = Z ou 1 = X)")
        if not np.isin(self.outcomes, (0, 1)).all():
            raise SiftingError("Resultado deve ser 0 ou 1")


@dataclass(frozen=True, eq=False)
class SiftedKey:
    bases: np.ndarray
    alice_bits: np.ndarray
    bob_bits: np.ndarray
    coincidences: int

    def __len__(self) -> int:
        return int(self.bases.size)

    @property
    def keep_fraction(self) -> float:
        return len(self) / self.coincidences if self.coincidences else 0.0

    def qber(self, basis: int) -> float:
        mask = self.bases == basis
        if not mask.any():
            return float("nan")
        return float(np.mean(self.alice_bits[mask] != self.bob_bits[mask]))

    @property
    def qber_z(self) -> float:
        return self.qber(BASIS_Z)

    @property
    def qber_x(self) -> float:
        return self.qber(BASIS_X)


def sift(alice: LabeledTagStream, bob: LabeledTagStream, window_ps: int, delay_ps: int = 0) -> SiftedKey:
    """Coincidências via detecção, mantidas só quando as bases coincidem."""
    alice.validate()
    bob.validate()
    index_a, index_b = match_coincidences(alice.stream.tags_ps, bob.stream.tags_ps, window_ps, delay_ps)
    bases_a = np.asarray(alice.bases)[index_a]
    bases_b = np.asarray(bob.bases)[index_b]
    keep = bases_a == bases_b
    key = SiftedKey(
        bases=bases_a[keep],
        alice_bits=np.asarray(alice.outcomes)[index_a][keep],
        bob_bits=np.asarray(bob.outcomes)[index_b][keep],
        coincidences=int(index_a.size),
    )
    logger.debug("Peneiramento: %d de %d coincidências mantidas", len(key), key.coincidences)
    return key


def _labeled(
    times: np.ndarray,
    bases: np.ndarray,
    outcomes: np.ndarray,
    duration_ps: int,
    detector_id: int,
) -> LabeledTagStream:
    tags = np.rint(times).astype(np.int64)
    inside = (tags >= 0) & (tags <= duration_ps)
    tags, bases, outcomes = tags[inside], bases[inside], outcomes[inside]
    # ordena e mantém o primeiro clique de cada ps
    tags, first = np.unique(tags, return_index=True)
    stream = TimeTagStream(detector_id=detector_id, tags_ps=tags, duration_ps=duration_ps)
    return LabeledTagStream(
        stream=stream,
        bases=bases[first].astype(np.uint8),
        outcomes=outcomes[first].astype(np.uint8),
    )


def simulate_labeled_streams(
    pair_rate_hz: float,
    duration_s: float,
    det_a: DetectorModel,
    det_b: DetectorModel,
    seed: int,
    *,
    basis_split: float = 0.5,
    error_z: float = 0.0,
    error_x: float = 0.0,
    noise_a_hz: float = 0.0,
    noise_b_hz: float = 0.0,
) -> Tuple[LabeledTagStream, LabeledTagStream]:
    """
    Fluxos rotulados com erros injetados.

    Cada par escolhe bases independentes nos dois lados (Z com probabilidade
    ``basis_split``). Com bases iguais o bit de Bob repete o de Alice, trocado
    com a probabilidade de erro da base; com bases diferentes é aleatório.
    Ruído e escuro chegam com base e bit aleatórios.
    """
    for name, value in (("error_z", error_z), ("error_x", error_x)):
        if not 0.0 <= value <= 0.5:
            raise ValueError(f"{name} fora de [0, 0.5]: {value}")
    if not 0.0 < basis_split < 1.0:
        raise ValueError(f"basis_split fora de (0, 1): {basis_split}")

    rng = np.random.default_rng(seed)
    duration_ps = int(round(duration_s * PS_PER_S))
    emissions = poisson_arrivals(rng, pair_rate_hz, duration_ps)
    n = emissions.size

    bases_a = (rng.random(n) >= basis_split).astype(np.uint8)
    bases_b = (rng.random(n) >= basis_split).astype(np.uint8)
    bits_a = rng.integers(0, 2, n, dtype=np.uint8)
    flip_prob = np.where(bases_a == BASIS_Z, error_z, error_x)
    flips = (rng.random(n) < flip_prob).astype(np.uint8)
    random_bits = rng.integers(0, 2, n, dtype=np.uint8)
    bits_b = np.where(bases_a == bases_b, bits_a ^ flips, random_bits).astype(np.uint8)

    survive_a = rng.random(n) < det_a.efficiency
    survive_b = rng.random(n) < det_b.efficiency
    times_a = apply_jitter(rng, emissions[survive_a], det_a.jitter_sigma_ps)
    times_b = apply_jitter(rng, emissions[survive_b], det_b.jitter_sigma_ps)

    def background(rate_hz: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        times = poisson_arrivals(rng, rate_hz, duration_ps)
        return (
            times,
            (rng.random(times.size) >= basis_split).astype(np.uint8),
            rng.integers(0, 2, times.size, dtype=np.uint8),
        )

    noise_a = background(noise_a_hz + det_a.dark_rate_hz)
    noise_b = background(noise_b_hz + det_b.dark_rate_hz)

    alice = _labeled(
        np.concatenate([times_a, noise_a[0]]),
        np.concatenate([bases_a[survive_a], noise_a[1]]),
        np.concatenate([bits_a[survive_a], noise_a[2]]),
        duration_ps,
        detector_id=0,
    )
    bob = _labeled(
        np.concatenate([times_b, noise_b[0]]),
        np.concatenate([bases_b[survive_b], noise_b[1]]),
        np.concatenate([bits_b[survive_b], noise_b[2]]),
        duration_ps,
        detector_id=1,
    )
    return alice, bob
