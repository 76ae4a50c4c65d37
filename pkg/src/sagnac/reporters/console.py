"""
Saída de console dos cenários.

Com ``rich`` instalado os eventos viram painéis e árvores coloridas; sem
ele, linhas simples com horário e tipo do evento.
"""

import json
import logging
from datetime import datetime
from typing import Callable, Dict

from src.sagnac.interfaces import ScenarioEvent, ScenarioEventType

logger = logging.getLogger("sagnac.reporters.console")

try:
    from rich.console import Console
    from rich.panel import Panel
    from rich.theme import Theme

    HAS_RICH = True
    console = Console(
        theme=Theme({"pair": "blue", "warn": "yellow", "fail": "bold red", "ok": "bold green"})
    )
except ImportError:
    HAS_RICH = False
    console = None

Renderer = Callable[[ScenarioEvent, str], None]


def _format_summary(summary: dict) -> str:
    return "\n".join(f"{key}: {value}" for key, value in sorted(summary.items()))


def _clock(event: ScenarioEvent) -> str:
    return datetime.fromtimestamp(event.timestamp).strftime("%H:%M:%S")


class ConsoleReporter:
    """Assina o barramento e imprime o andamento do cenário."""

    def __init__(self):
        rich_table: Dict[ScenarioEventType, Renderer] = {
            ScenarioEventType.SCENARIO_START: self._rich_start,
            ScenarioEventType.CHANNEL_COMPLETE: self._rich_channel,
            ScenarioEventType.CHANNEL_ERROR: self._rich_channel_error,
            ScenarioEventType.WARNING: self._rich_warning,
            ScenarioEventType.ARTIFACT_WRITTEN: self._rich_artifact,
            ScenarioEventType.SCENARIO_COMPLETE: self._rich_complete,
            ScenarioEventType.SCENARIO_ERROR: self._rich_error,
        }
        plain_table: Dict[ScenarioEventType, Renderer] = {
            ScenarioEventType.SCENARIO_START: self._plain_start,
            ScenarioEventType.CHANNEL_COMPLETE: self._plain_channel,
            ScenarioEventType.CHANNEL_ERROR: self._plain_channel_error,
            ScenarioEventType.WARNING: self._plain_warning,
            ScenarioEventType.SCENARIO_COMPLETE: self._plain_complete,
            ScenarioEventType.SCENARIO_ERROR: self._plain_error,
        }
        self._renderers = rich_table if HAS_RICH else plain_table

    def handle_event(self, event: ScenarioEvent) -> None:
        render = self._renderers.get(event.type)
        if render is None:
            return
        try:
            render(event, _clock(event))
        except Exception as exc:
            # console nunca derruba o cenário
            logger.warning("Falha ao renderizar '%s': %s", event.type.value, exc)

    # rich

    def _rich_start(self, event: ScenarioEvent, clock: str) -> None:
        data = event.data
        console.print()
        console.print(
            Panel(
                f"[bold]{data.get('command')}[/] [dim]semente {data.get('seed')}[/]",
                title="[bold cyan]Cenário[/]",
                subtitle=f"[dim]{clock}[/]",
                border_style="cyan",
            )
        )

    def _rich_channel(self, event: ScenarioEvent, clock: str) -> None:
        metrics = ", ".join(f"{k}={v}" for k, v in event.data.items() if k not in ("command", "pair"))
        console.print(f"  [pair]{event.data.get('pair')}[/] [dim]{metrics}[/]")

    def _rich_channel_error(self, event: ScenarioEvent, clock: str) -> None:
        console.print(f"  [fail]✗ {event.data.get('pair')}[/] {event.data.get('error')}")

    def _rich_warning(self, event: ScenarioEvent, clock: str) -> None:
        console.print(f"  [warn]⚠ {event.data.get('message')}[/]")

    def _rich_artifact(self, event: ScenarioEvent, clock: str) -> None:
        console.print(f"  [dim]→ {event.data.get('path')}[/]")

    def _rich_complete(self, event: ScenarioEvent, clock: str) -> None:
        data = event.data
        code = data.get("exit_code", 0)
        style = "ok" if code == 0 else "warn"
        console.print(
            Panel(
                _format_summary(data.get("summary", {})) or "sem resumo",
                title=f"[{style}]{data.get('command')}: código {code}[/]",
                subtitle=f"[dim]{clock}[/]",
                border_style="green" if code == 0 else "yellow",
            )
        )

    def _rich_error(self, event: ScenarioEvent, clock: str) -> None:
        console.print(
            Panel(str(event.data.get("error", "?")), title="[fail]Cenário falhou[/]", border_style="red")
        )

    # texto simples

    def _plain_start(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}] ## {event.data.get('command')} (semente {event.data.get('seed')})")

    def _plain_channel(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}]    {event.data.get('pair')} {json.dumps(event.data, ensure_ascii=False, default=str)}")

    def _plain_channel_error(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}]    FALHA {event.data.get('pair')}: {event.data.get('error')}")

    def _plain_warning(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}]    aviso: {event.data.get('message')}")

    def _plain_complete(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}] ## {event.data.get('command')} terminou com código {event.data.get('exit_code')}")
        summary = event.data.get("summary", {})
        if summary:
            print(_format_summary(summary))

    def _plain_error(self, event: ScenarioEvent, clock: str) -> None:
        print(f"[{clock}] ## erro: {event.data.get('error')}")
