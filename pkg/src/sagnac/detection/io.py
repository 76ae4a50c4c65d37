"""
Persistência de fluxos de time-tags.

Formato binário (little-endian)::

    cabeçalho de 16 bytes: b"TTAG" | versão u16 | reservado u16 | duração_ps u64
    registros de 9 bytes:  detector_id u8 | timestamp_ps u64

Também há exportação CSV (detector_id, timestamp_ps) via pandas.
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path
from typing import Dict, List, Sequence, Union

import numpy as np
import pandas as pd

from src.sagnac.detection.models import TimeTagStream

logger = logging.getLogger("sagnac.detection.io")

MAGIC = b"TTAG"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sHHQ")
RECORD_DTYPE = np.dtype([("detector", "u1"), ("t", "<u8")])

PathLike = Union[str, Path]


class TimeTagFormatError(ValueError):
    """Arquivo de time-tags malformado."""


def _merge(streams: Sequence[TimeTagStream]) -> np.ndarray:
    total = sum(len(s) for s in streams)
    records = np.empty(total, dtype=RECORD_DTYPE)
    offset = 0
    for stream in streams:
        size = len(stream)
        records["detector"][offset : offset + size] = stream.detector_id
        records["t"][offset : offset + size] = stream.tags_ps
        offset += size
    # ordem por tempo, empate por detector: arquivo determinístico
    order = np.lexsort((records["detector"], records["t"]))
    return records[order]


def write_ttag(path: PathLike, streams: Sequence[TimeTagStream]) -> Path:
    """Grava os fluxos num único arquivo binário, intercalados por tempo."""
    if not streams:
        raise ValueError("Nenhum fluxo para gravar")
    durations = {s.duration_ps for s in streams}
    if len(durations) != 1:
        raise ValueError(f"Fluxos com durações distintas: {sorted(durations)}")
    ids = [s.detector_id for s in streams]
    if len(set(ids)) != len(ids):
        raise ValueError(f"detector_id repetido: {ids}")

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    records = _merge(streams)
    with target.open("wb") as handle:
        handle.write(HEADER.pack(MAGIC, FORMAT_VERSION, 0, durations.pop()))
        handle.write(records.tobytes())
    logger.info("Time-tags gravados: %s (%d registros)", target, records.size)
    return target


def read_ttag(path: PathLike) -> Dict[int, TimeTagStream]:
    """Lê um arquivo TTAG e separa os fluxos por detector_id."""
    raw = Path(path).read_bytes()
    if len(raw) < HEADER.size:
        raise TimeTagFormatError(f"Arquivo curto demais para o cabeçalho: {path}")
    magic, version, _reserved, duration_ps = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise TimeTagFormatError(f"Assinatura inválida {magic!r} em {path}")
    if version != FORMAT_VERSION:
        raise TimeTagFormatError(f"Versão de formato não suportada: {version}")
    body = raw[HEADER.size :]
    if len(body) % RECORD_DTYPE.itemsize:
        raise TimeTagFormatError(
            f"Tamanho do corpo ({len(body)} bytes) não é múltiplo de {RECORD_DTYPE.itemsize}"
        )

    records = np.frombuffer(body, dtype=RECORD_DTYPE)
    streams: Dict[int, TimeTagStream] = {}
    for detector_id in np.unique(records["detector"]).tolist():
        tags = records["t"][records["detector"] == detector_id].astype(np.int64)
        streams[detector_id] = TimeTagStream(
            detector_id=detector_id, tags_ps=tags, duration_ps=int(duration_ps)
        )
    return streams


def export_csv(path: PathLike, streams: Sequence[TimeTagStream]) -> Path:
    """Exporta os fluxos como CSV (detector_id, timestamp_ps) ordenado por tempo."""
    records = _merge(streams)
    frame = pd.DataFrame(
        {"detector_id": records["detector"].astype(int), "timestamp_ps": records["t"].astype(np.int64)}
    )
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False, lineterminator="\n")
    return target


def import_csv(path: PathLike, duration_ps: int) -> Dict[int, TimeTagStream]:
    frame = pd.read_csv(path)
    missing: List[str] = [c for c in ("detector_id", "timestamp_ps") if c not in frame.columns]
    if missing:
        raise TimeTagFormatError(f"Colunas ausentes em {path}: {missing}")
    streams: Dict[int, TimeTagStream] = {}
    for detector_id, group in frame.groupby("detector_id", sort=True):
        tags = np.sort(group["timestamp_ps"].to_numpy(dtype=np.int64))
        streams[int(detector_id)] = TimeTagStream(
            detector_id=int(detector_id), tags_ps=tags, duration_ps=duration_ps
        )
    return streams
