"""
Orquestração de cenários.

O ``ScenarioRunner`` resolve o comando no registry, emite eventos de
ciclo de vida, abre spans OpenTelemetry e grava o manifesto. O código de
saída distingue sucesso, configuração inválida, conclusão com avisos e
falha de execução.
"""

import logging
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, Optional

from src.sagnac.config import ScenarioConfig
from src.sagnac.events import SimpleEventBus, get_event_bus
from src.sagnac.interfaces import ScenarioEventType, ScenarioOutcome
from src.sagnac.manifest import build_manifest, write_manifest
from src.sagnac.observability import get_tracer, setup_observability
from src.sagnac.scenarios.registry import ScenarioRegistry

logger = logging.getLogger("sagnac.runner")


class ExitCode(IntEnum):
    OK = 0
    INVALID_CONFIG = 1
    COMPLETED_WITH_WARNINGS = 2
    FAILED = 3


class ScenarioRunner:
    """Executa um comando sobre uma configuração validada."""

    def __init__(self, config: ScenarioConfig, event_bus: Optional[SimpleEventBus] = None):
        self.config = config
        self._event_bus = event_bus or get_event_bus()
        self._registry = ScenarioRegistry()
        setup_observability()

    @property
    def event_bus(self) -> SimpleEventBus:
        return self._event_bus

    def _emit(self, event_type: ScenarioEventType, data: Optional[Dict[str, Any]] = None) -> None:
        self._event_bus.emit_simple(event_type, data or {}, metadata={"scenario": self.config.name})

    def run(self, command: str, out_dir: Optional[Path] = None) -> ExitCode:
        out_dir = Path(out_dir or self.config.output_dir)
        scenario = self._registry.get(command)
        if scenario is None:
            logger.error("Comando desconhecido: %s", command)
            return ExitCode.INVALID_CONFIG

        errors = scenario.validate(self.config)
        if errors:
            for error in errors:
                logger.error("Validação: %s", error)
            return ExitCode.INVALID_CONFIG

        out_dir.mkdir(parents=True, exist_ok=True)
        tracer = get_tracer()
        self._emit(ScenarioEventType.SCENARIO_START, {"command": command, "seed": self.config.seed})

        with tracer.start_as_current_span(f"scenario.{command}") as span:
            span.set_attribute("sagnac.command", command)
            span.set_attribute("sagnac.seed", self.config.seed)
            try:
                outcome: ScenarioOutcome = scenario.run(self.config, out_dir, self._event_bus)
            except Exception as exc:
                span.record_exception(exc)
                logger.exception("Cenário '%s' falhou", command)
                self._emit(ScenarioEventType.SCENARIO_ERROR, {"command": command, "error": str(exc)})
                return ExitCode.FAILED

            exit_code = ExitCode.COMPLETED_WITH_WARNINGS if outcome.warnings else ExitCode.OK
            span.set_attribute("sagnac.warnings", len(outcome.warnings))

        manifest = build_manifest(
            command,
            self.config,
            out_dir,
            outcome.artifacts,
            status="completed_with_warnings" if outcome.warnings else "completed",
            exit_code=int(exit_code),
            warnings=outcome.warnings,
            summary=outcome.summary,
        )
        manifest_path = write_manifest(manifest, out_dir)
        self._emit(ScenarioEventType.MANIFEST_WRITTEN, {"path": str(manifest_path)})
        self._emit(
            ScenarioEventType.SCENARIO_COMPLETE,
            {"command": command, "exit_code": int(exit_code), "summary": outcome.summary},
        )
        return exit_code


def run_scenario(command: str, cfg: ScenarioConfig, out_dir: Optional[Path] = None) -> ExitCode:
    """Atalho funcional para ``ScenarioRunner(cfg).run(command, out_dir)``."""
    return ScenarioRunner(cfg).run(command, out_dir)
