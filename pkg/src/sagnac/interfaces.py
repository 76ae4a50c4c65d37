"""
Contratos e Interfaces (ABCs) do simulador.

- ScenarioStrategy: um comando da CLI (plan, tomography, franson, qkd, timetags)
- EventBus: sistema de eventos para observabilidade
- Registry: interface genérica para registries
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, TypeVar, Union

if TYPE_CHECKING:
    from src.sagnac.config import ScenarioConfig

T = TypeVar("T")


class ScenarioEventType(str, Enum):
    """Tipos de eventos emitidos durante um cenário."""

    # Lifecycle
    SCENARIO_START = "scenario_start"
    SCENARIO_COMPLETE = "scenario_complete"
    SCENARIO_ERROR = "scenario_error"

    # Trabalho por par de canais
    CHANNEL_START = "channel_start"
    CHANNEL_COMPLETE = "channel_complete"
    CHANNEL_ERROR = "channel_error"

    # Avisos físicos (FSR, convergência, ...)
    WARNING = "warning"

    # Persistência
    ARTIFACT_WRITTEN = "artifact_written"
    MANIFEST_WRITTEN = "manifest_written"


@dataclass
class ScenarioEvent:
    """Estrutura de um evento emitido pelo simulador."""

    type: ScenarioEventType
    timestamp: float = field(default_factory=time.time)
    data: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)


EventHandler = Callable[[ScenarioEvent], None]


# =============================================================================
# Event Bus
# =============================================================================


class EventBus(ABC):
    """
    Sistema de eventos para observabilidade e hooks.

    Componentes externos (console, logging) se inscrevem para receber
    notificações sobre o andamento do cenário.
    """

    @abstractmethod
    def subscribe(
        self,
        event_type: Union[ScenarioEventType, List[ScenarioEventType], str],
        handler: EventHandler,
    ) -> str:
        """Inscreve um handler e retorna o ID da inscrição."""
        ...

    @abstractmethod
    def unsubscribe(self, subscription_id: str) -> bool:
        ...

    @abstractmethod
    def emit(self, event: ScenarioEvent) -> None:
        ...

    def emit_simple(
        self,
        event_type: ScenarioEventType,
        data: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.emit(ScenarioEvent(type=event_type, data=data or {}))


# =============================================================================
# Scenario Strategy
# =============================================================================


@dataclass
class ScenarioOutcome:
    """Resultado de um cenário: artefatos gravados e avisos."""

    artifacts: List[Path] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


class ScenarioStrategy(ABC):
    """
    Strategy para um comando do simulador.

    Cada comando conhece seus artefatos; o runner cuida de eventos,
    tracing e manifesto.
    """

    @property
    @abstractmethod
    def command(self) -> str:
        """Nome do comando (chave no registry)."""
        ...

    @abstractmethod
    def run(self, cfg: "ScenarioConfig", out_dir: Path, bus: EventBus) -> ScenarioOutcome:
        """
        Executa o cenário e grava os artefatos em ``out_dir``.

        Raises:
            Exception: falhas fatais; falhas por canal viram avisos
        """
        ...

    def validate(self, cfg: "ScenarioConfig") -> List[str]:
        """Erros de configuração específicos do comando (vazia se válido)."""
        return []


# =============================================================================
# Registry
# =============================================================================


class Registry(ABC):
    """Interface genérica para registries."""

    @abstractmethod
    def register(self, key: str, item: T) -> None:
        ...

    @abstractmethod
    def get(self, key: str) -> Optional[T]:
        ...

    @abstractmethod
    def list_keys(self) -> List[str]:
        ...

    def has(self, key: str) -> bool:
        return self.get(key) is not None
