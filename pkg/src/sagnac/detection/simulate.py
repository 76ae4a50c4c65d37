"""
Geração Monte-Carlo de fluxos de time-tags.

Emissões de pares formam um processo de Poisson; cada fóton sobrevive com a
eficiência do seu braço e recebe jitter gaussiano independente. Ruído e
contagens de escuro são processos de Poisson independentes. A sequência de
sorteios é fixa, então o resultado é bit-exato por semente.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from src.sagnac.detection.models import DetectorModel, TimeTagStream

logger = logging.getLogger("sagnac.detection.simulate")

PS_PER_S = 1_000_000_000_000
DEFAULT_MAX_EVENTS = 50_000_000


class StreamOverflowError(RuntimeError):
    """Número esperado de eventos excede o limite de memória configurado."""


def poisson_arrivals(rng: np.random.Generator, rate_hz: float, duration_ps: int) -> np.ndarray:
    """Instantes (ps, float) de um processo de Poisson homogêneo, ordenados."""
    if rate_hz <= 0:
        return np.empty(0)
    count = rng.poisson(rate_hz * duration_ps / PS_PER_S)
    return np.sort(rng.uniform(0.0, duration_ps, count))


def apply_jitter(rng: np.random.Generator, times_ps: np.ndarray, sigma_ps: float) -> np.ndarray:
    if sigma_ps <= 0 or times_ps.size == 0:
        return times_ps
    return times_ps + rng.normal(0.0, sigma_ps, times_ps.size)


def finalize_tags(times_ps: np.ndarray, duration_ps: int, dead_time_ps: int = 0) -> np.ndarray:
    """Arredonda para ps inteiros, descarta fora de [0, duração], ordena e aplica tempo morto."""
    tags = np.rint(times_ps).astype(np.int64)
    tags = tags[(tags >= 0) & (tags <= duration_ps)]
    tags.sort(kind="stable")
    return dead_time_filter(tags, dead_time_ps)


def dead_time_filter(tags_ps: np.ndarray, dead_time_ps: int) -> np.ndarray:
    """
    Remove cliques dentro do tempo morto do clique aceito anterior.

    Resolução mínima de 1 ps: dois cliques no mesmo ps nunca são aceitos,
    o que garante ordenação estrita.
    """
    if tags_ps.size == 0:
        return tags_ps
    if dead_time_ps <= 1:
        return np.unique(tags_ps)

    keep = np.zeros(tags_ps.size, dtype=bool)
    last = None
    for index, tag in enumerate(tags_ps.tolist()):
        if last is None or tag - last >= dead_time_ps:
            keep[index] = True
            last = tag
    return tags_ps[keep]


def expected_events(
    pair_rate_hz: float,
    noise_a_hz: float,
    noise_b_hz: float,
    duration_s: float,
    det_a: DetectorModel,
    det_b: DetectorModel,
) -> float:
    return duration_s * (
        pair_rate_hz * (1 + det_a.efficiency + det_b.efficiency)
        + noise_a_hz
        + noise_b_hz
        + det_a.dark_rate_hz
        + det_b.dark_rate_hz
    )


def simulate_pair_streams(
    pair_rate_hz: float,
    noise_a_hz: float,
    noise_b_hz: float,
    duration_s: float,
    det_a: DetectorModel,
    det_b: DetectorModel,
    seed: int,
    *,
    max_events: int = DEFAULT_MAX_EVENTS,
    detector_ids: Tuple[int, int] = (0, 1),
) -> Tuple[TimeTagStream, TimeTagStream]:
    """Simula os fluxos dos dois braços para uma taxa de pares e ruído por braço."""
    if min(pair_rate_hz, noise_a_hz, noise_b_hz) < 0:
        raise ValueError("Taxas devem ser não negativas")
    if duration_s <= 0:
        raise ValueError(f"Duração deve ser positiva: {duration_s}")

    expected = expected_events(pair_rate_hz, noise_a_hz, noise_b_hz, duration_s, det_a, det_b)
    if expected > max_events:
        raise StreamOverflowError(
            f"{expected:.3g} eventos esperados excedem o limite de {max_events:.3g}"
        )

    rng = np.random.default_rng(seed)
    duration_ps = int(round(duration_s * PS_PER_S))

    emissions = poisson_arrivals(rng, pair_rate_hz, duration_ps)
    survive_a = rng.random(emissions.size) < det_a.efficiency
    survive_b = rng.random(emissions.size) < det_b.efficiency
    signal_a = apply_jitter(rng, emissions[survive_a], det_a.jitter_sigma_ps)
    signal_b = apply_jitter(rng, emissions[survive_b], det_b.jitter_sigma_ps)

    background_a = poisson_arrivals(rng, noise_a_hz + det_a.dark_rate_hz, duration_ps)
    background_b = poisson_arrivals(rng, noise_b_hz + det_b.dark_rate_hz, duration_ps)

    tags_a = finalize_tags(
        np.concatenate([signal_a, background_a]), duration_ps, int(round(det_a.dead_time_ns * 1000))
    )
    tags_b = finalize_tags(
        np.concatenate([signal_b, background_b]), duration_ps, int(round(det_b.dead_time_ns * 1000))
    )

    logger.debug(
        "Fluxos simulados: %d emissões, %d tags (A), %d tags (B)",
        emissions.size,
        tags_a.size,
        tags_b.size,
    )
    return (
        TimeTagStream(detector_id=detector_ids[0], tags_ps=tags_a, duration_ps=duration_ps),
        TimeTagStream(detector_id=detector_ids[1], tags_ps=tags_b, duration_ps=duration_ps),
    )
