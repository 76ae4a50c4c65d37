"""
Contagem de coincidências entre dois fluxos de time-tags.

O pareamento é guloso com dois ponteiros sobre ``b + atraso``: cada tag de A
casa com no máximo uma tag de B dentro de ±janela/2. Para fluxos ordenados
o resultado é o emparelhamento máximo e independe da ordem dos argumentos.
"""

from __future__ import annotations

import logging
from typing import Sequence, Tuple

import numpy as np

from src.sagnac.detection.models import CoincidenceResult, TimeTagStream, UnsortedStreamError

logger = logging.getLogger("sagnac.detection.coincidence")

DEFAULT_ACCIDENTAL_OFFSET_PS = 50_000
# ±75 ps = 3.5σ do pico de coincidência com o jitter padrão (>99.9 % dos pares)
DEFAULT_WINDOW_PS = 150


def _require_sorted(stream: TimeTagStream) -> None:
    if not stream.is_sorted():
        raise UnsortedStreamError(f"Fluxo do detector {stream.detector_id} não está ordenado")


def match_coincidences(
    tags_a: np.ndarray,
    tags_b: np.ndarray,
    window_ps: int,
    delay_ps: int = 0,
) -> Tuple[np.ndarray, np.ndarray]:
    """Índices (i, j) dos pares casados com |a_i − (b_j + atraso)| ≤ janela/2."""
    if window_ps <= 0:
        raise ValueError(f"Janela de coincidência deve ser positiva: {window_ps}")

    half = window_ps / 2.0
    # listas Python: o laço escalar é mais rápido que indexar ndarray
    shifted = (np.asarray(tags_b, dtype=np.int64) + int(delay_ps)).tolist()
    a = np.asarray(tags_a, dtype=np.int64).tolist()
    n_a, n_b = len(a), len(shifted)
    index_a, index_b = [], []
    i = j = 0
    while i < n_a and j < n_b:
        diff = a[i] - shifted[j]
        if diff > half:
            j += 1
        elif diff < -half:
            i += 1
        else:
            index_a.append(i)
            index_b.append(j)
            i += 1
            j += 1
    return np.asarray(index_a, dtype=np.int64), np.asarray(index_b, dtype=np.int64)


def _count_at(a: TimeTagStream, b: TimeTagStream, window_ps: int, delay_ps: int) -> int:
    matched, _ = match_coincidences(a.tags_ps, b.tags_ps, window_ps, delay_ps)
    return int(matched.size)


def count_coincidences(
    a: TimeTagStream,
    b: TimeTagStream,
    window_ps: int = DEFAULT_WINDOW_PS,
    delay_ps: int = 0,
    *,
    accidental_offset_ps: int = DEFAULT_ACCIDENTAL_OFFSET_PS,
) -> CoincidenceResult:
    """
    Coincidências na janela e estimativa de acidentais.

    Acidentais são a média das contagens com o atraso deslocado de
    ±``accidental_offset_ps``, longe do pico correlacionado.
    """
    _require_sorted(a)
    _require_sorted(b)
    if accidental_offset_ps <= window_ps:
        raise ValueError("Deslocamento de acidentais deve exceder a janela")

    true_counts = _count_at(a, b, window_ps, delay_ps)
    side_counts = [
        _count_at(a, b, window_ps, delay_ps + sign * accidental_offset_ps) for sign in (-1, 1)
    ]
    accidentals = float(np.mean(side_counts))
    logger.debug(
        "Coincidências: %d (acidentais %.2f) janela=%d ps atraso=%d ps",
        true_counts,
        accidentals,
        window_ps,
        delay_ps,
    )
    return CoincidenceResult(
        true_window_counts=true_counts,
        accidental_estimate=accidentals,
        window_ps=int(window_ps),
        relative_delay_ps=int(delay_ps),
    )


def accidental_rate(singles_a_hz: float, singles_b_hz: float, window_ps: float) -> float:
    """Taxa de acidentais r_a · r_b · τ."""
    if min(singles_a_hz, singles_b_hz, window_ps) < 0:
        raise ValueError("Taxas e janela devem ser não negativas")
    return singles_a_hz * singles_b_hz * window_ps * 1e-12


def delay_histogram(
    a: TimeTagStream,
    b: TimeTagStream,
    bin_ps: int,
    span_ps: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Histograma de (t_b − t_a) em [−span, span] com todos os pares de tags.

    Retorna (centros dos bins em ps, contagens).
    """
    _require_sorted(a)
    _require_sorted(b)
    if bin_ps <= 0 or span_ps <= 0:
        raise ValueError("bin_ps e span_ps devem ser positivos")

    edges = np.arange(-span_ps, span_ps + bin_ps, bin_ps, dtype=np.int64)
    lo = np.searchsorted(b.tags_ps, a.tags_ps - span_ps, side="left")
    hi = np.searchsorted(b.tags_ps, a.tags_ps + span_ps, side="right")
    sizes = hi - lo
    if sizes.sum() == 0:
        return (edges[:-1] + bin_ps / 2.0), np.zeros(edges.size - 1, dtype=np.int64)

    starts = np.repeat(lo, sizes)
    offsets = np.arange(sizes.sum()) - np.repeat(np.cumsum(sizes) - sizes, sizes)
    partner = b.tags_ps[starts + offsets]
    deltas = partner - np.repeat(a.tags_ps, sizes)
    counts, _ = np.histogram(deltas, bins=edges)
    return (edges[:-1] + bin_ps / 2.0), counts.astype(np.int64)


def find_delay(a: TimeTagStream, b: TimeTagStream, bin_ps: int = 10, span_ps: int = 10_000) -> int:
    """Atraso para ``count_coincidences``: simétrico do pico de t_b − t_a."""
    centers, counts = delay_histogram(a, b, bin_ps, span_ps)
    if counts.sum() == 0:
        return 0
    return -int(round(centers[int(np.argmax(counts))]))


def coincidence_matrix(
    streams_a: Sequence[TimeTagStream],
    streams_b: Sequence[TimeTagStream],
    window_ps: int,
    delay_ps: int = 0,
) -> np.ndarray:
    """Coincidências entre todos os pares de detectores (linhas A, colunas B)."""
    matrix = np.zeros((len(streams_a), len(streams_b)), dtype=np.int64)
    for i, a in enumerate(streams_a):
        for j, b in enumerate(streams_b):
            matrix[i, j] = count_coincidences(a, b, window_ps, delay_ps).true_window_counts
    return matrix
