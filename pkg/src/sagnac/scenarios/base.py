"""
Classe base para os cenários.

Fornece utilitários de persistência determinística (CSV/YAML) e de
emissão de eventos compartilhados por todos os comandos.
"""

import logging
from abc import abstractmethod
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd
import yaml

from src.sagnac.config import ScenarioConfig
from src.sagnac.interfaces import EventBus, ScenarioEventType, ScenarioOutcome, ScenarioStrategy

CSV_FLOAT_FORMAT = "%.9g"


class BaseScenario(ScenarioStrategy):
    """Implementação base: logging com prefixo do comando e escrita de artefatos."""

    @property
    @abstractmethod
    def command(self) -> str:
        ...

    @abstractmethod
    def run(self, cfg: ScenarioConfig, out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        ...

    def validate(self, cfg: ScenarioConfig) -> List[str]:
        errors = []
        try:
            cfg.plan.build()
        except ValueError as exc:
            errors.append(f"Plano de canais inválido: {exc}")
        return errors

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger(f"sagnac.scenarios.{self.command}")

    def _log(self, message: str, *args: Any, level: int = logging.INFO) -> None:
        self.logger.log(level, f"[{self.command}] {message}", *args)

    def write_frame(self, frame: pd.DataFrame, path: Path, bus: EventBus, outcome: ScenarioOutcome) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        return self.track(path, bus, outcome)

    def write_yaml(self, payload: Dict[str, Any], path: Path, bus: EventBus, outcome: ScenarioOutcome) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yaml.safe_dump(payload, f, sort_keys=True, allow_unicode=True)
        return self.track(path, bus, outcome)

    def track(self, path: Path, bus: EventBus, outcome: ScenarioOutcome) -> Path:
        outcome.artifacts.append(path)
        bus.emit_simple(ScenarioEventType.ARTIFACT_WRITTEN, {"command": self.command, "path": str(path)})
        return path

    def warn(self, message: str, bus: EventBus, outcome: ScenarioOutcome) -> None:
        outcome.warnings.append(message)
        bus.emit_simple(ScenarioEventType.WARNING, {"command": self.command, "message": message})
