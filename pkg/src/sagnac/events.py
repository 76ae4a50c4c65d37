"""
Barramento de eventos dos cenários.

O runner e os cenários publicam o andamento (início, canal concluído,
artefato gravado, avisos); console, logging e contadores assinam.

Uso:
    ```python
    from src.sagnac.events import SimpleEventBus
    from src.sagnac.interfaces import ScenarioEventType

    bus = SimpleEventBus()
    bus.subscribe(ScenarioEventType.CHANNEL_COMPLETE, lambda e: print(e.data["pair"]))
    bus.emit_simple(ScenarioEventType.CHANNEL_COMPLETE, {"pair": "ITU19-23"})
    ```
"""

import itertools
import logging
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional, Union

from src.sagnac.interfaces import EventBus, EventHandler, ScenarioEvent, ScenarioEventType

logger = logging.getLogger("sagnac.events")

EventSelector = Union[ScenarioEventType, str, Iterable[ScenarioEventType]]


def _keys(selector: EventSelector) -> List[str]:
    if isinstance(selector, ScenarioEventType):
        return [selector.value]
    if isinstance(selector, str):
        return [selector]
    return [item.value for item in selector]


class SimpleEventBus(EventBus):
    """
    Barramento síncrono.

    Handlers rodam na thread que emite, na ordem de inscrição; "*" recebe
    todos os tipos. Exceção em um handler é logada e não afeta os demais.
    """

    WILDCARD = "*"

    def __init__(self):
        self._routes: Dict[str, Dict[str, EventHandler]] = defaultdict(dict)
        self._ids = itertools.count(1)
        self._enabled = True

    def subscribe(self, event_type: EventSelector, handler: EventHandler) -> str:
        subscription_id = f"sub-{next(self._ids):04d}"
        keys = _keys(event_type)
        for key in keys:
            self._routes[key][subscription_id] = handler
        logger.debug("Inscrição %s em %s", subscription_id, keys)
        return subscription_id

    def subscribe_all(self, handler: EventHandler) -> str:
        return self.subscribe(self.WILDCARD, handler)

    def unsubscribe(self, subscription_id: str) -> bool:
        removed = [route.pop(subscription_id) for route in self._routes.values() if subscription_id in route]
        return bool(removed)

    def emit(self, event: ScenarioEvent) -> None:
        if not self._enabled:
            return
        targets = [*self._routes.get(event.type.value, {}).values(), *self._routes.get(self.WILDCARD, {}).values()]
        for handler in targets:
            try:
                handler(event)
            except Exception as exc:
                logger.error("Handler de '%s' falhou: %s", event.type.value, exc)

    def emit_simple(
        self,
        event_type: ScenarioEventType,
        data: Optional[Dict[str, Any]] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> ScenarioEvent:
        event = ScenarioEvent(type=event_type, data=data or {}, metadata=metadata or {})
        self.emit(event)
        return event

    def enable(self) -> None:
        self._enabled = True

    def disable(self) -> None:
        """Silencia o barramento sem remover inscrições."""
        self._enabled = False

    def clear(self) -> None:
        self._routes.clear()

    @property
    def handler_count(self) -> int:
        return sum(len(route) for route in self._routes.values())


# =============================================================================
# Handlers prontos
# =============================================================================


def create_logging_handler(level: int = logging.INFO, logger_name: str = "sagnac.events") -> EventHandler:
    """Loga cada evento; avisos e erros de canal sobem para WARNING, falha do cenário para ERROR."""
    event_logger = logging.getLogger(logger_name)
    escalated = {ScenarioEventType.CHANNEL_ERROR, ScenarioEventType.WARNING}

    def handler(event: ScenarioEvent) -> None:
        if event.type == ScenarioEventType.SCENARIO_ERROR:
            event_level = logging.ERROR
        elif event.type in escalated:
            event_level = max(level, logging.WARNING)
        else:
            event_level = level
        event_logger.log(event_level, "[%s] %s", event.type.value, event.data)

    return handler


def create_metrics_handler(counters: Dict[str, int]) -> EventHandler:
    """Conta eventos por tipo em ``counters``."""

    def handler(event: ScenarioEvent) -> None:
        counters[event.type.value] = counters.get(event.type.value, 0) + 1

    return handler


# =============================================================================
# Barramento global (usado quando o runner não recebe um)
# =============================================================================

_default_bus: Optional[SimpleEventBus] = None


def get_event_bus() -> SimpleEventBus:
    global _default_bus
    if _default_bus is None:
        _default_bus = SimpleEventBus()
    return _default_bus


def reset_event_bus() -> None:
    global _default_bus
    if _default_bus is not None:
        _default_bus.clear()
    _default_bus = None
