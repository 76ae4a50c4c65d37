"""
Manifesto de execução.

Cada execução grava ``manifest.yaml`` com comando, semente, versão, eco da
configuração e SHA-256 de cada artefato. Não há carimbo de tempo: duas
execuções com a mesma configuração e semente produzem o mesmo manifesto.
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List

import yaml
from pydantic import BaseModel, Field

from src.sagnac import __version__
from src.sagnac.config import ScenarioConfig

logger = logging.getLogger("sagnac.manifest")

MANIFEST_NAME = "manifest.yaml"


class ArtifactEntry(BaseModel):
    path: str
    sha256: str
    size_bytes: int


class RunManifest(BaseModel):
    """Registro serializável de uma execução."""

    command: str
    seed: int
    version: str = __version__
    status: str = "completed"
    exit_code: int = 0
    warnings: List[str] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)
    artifacts: List[ArtifactEntry] = Field(default_factory=list)


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _config_echo(cfg: ScenarioConfig) -> Dict[str, Any]:
    return cfg.model_dump(mode="json")


def build_manifest(
    command: str,
    cfg: ScenarioConfig,
    out_dir: Path,
    artifacts: Iterable[Path],
    *,
    status: str = "completed",
    exit_code: int = 0,
    warnings: Iterable[str] = (),
    summary: Dict[str, Any] | None = None,
) -> RunManifest:
    entries = []
    for artifact in sorted({Path(a) for a in artifacts}):
        entries.append(
            ArtifactEntry(
                path=artifact.relative_to(out_dir).as_posix(),
                sha256=sha256_file(artifact),
                size_bytes=artifact.stat().st_size,
            )
        )
    return RunManifest(
        command=command,
        seed=cfg.seed,
        status=status,
        exit_code=exit_code,
        warnings=list(warnings),
        summary=summary or {},
        config=_config_echo(cfg),
        artifacts=entries,
    )


def write_manifest(manifest: RunManifest, out_dir: Path) -> Path:
    target = Path(out_dir) / MANIFEST_NAME
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        yaml.safe_dump(manifest.model_dump(mode="json"), f, sort_keys=True, allow_unicode=True)
    logger.info("Manifesto gravado: %s (%d artefatos)", target, len(manifest.artifacts))
    return target


def load_manifest(path: Path) -> RunManifest:
    with open(path, "r", encoding="utf-8") as f:
        return RunManifest(**yaml.safe_load(f))
