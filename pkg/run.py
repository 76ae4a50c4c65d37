from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from dotenv import load_dotenv

# Configurar encoding UTF-8 para Windows
if sys.platform == "win32":
    os.environ["PYTHONIOENCODING"] = "utf-8"
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", errors="replace")
        sys.stderr.reconfigure(encoding="utf-8", errors="replace")

# Adiciona a raiz do projeto ao sys.path para permitir imports de src
PROJECT_ROOT = Path(__file__).resolve().parents[0]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.sagnac.config import ConfigError, ConfigLoader, parse_channel_pairs
from src.sagnac.events import SimpleEventBus, create_logging_handler
from src.sagnac.reporters.console import ConsoleReporter
from src.sagnac.runner import ExitCode, ScenarioRunner

app = typer.Typer(add_completion=False, help="Simulador de rede quântica com fonte Sagnac emaranhada.")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

ConfigOption = typer.Option(None, "--config", "-c", help="Arquivo YAML/JSON do cenário (padrões se omitido)")
SeedOption = typer.Option(None, "--seed", "-s", help="Semente (sobrepõe a configuração)")
OutOption = typer.Option(None, "--out", "-o", help="Diretório de saída (sobrepõe a configuração)")
ChannelsOption = typer.Option(None, "--channels", help="Plano explícito, ex.: 19:23,18:24")
DebugOption = typer.Option(False, "--debug", "-d", help="Logging detalhado")


def setup_logging(debug: bool) -> None:
    level_name = "DEBUG" if debug else os.getenv("SAGNAC_LOG_LEVEL", "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    logging.getLogger("sagnac").setLevel(level)


def _overrides(seed: Optional[int], out: Optional[Path], channels: Optional[str]) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if seed is not None:
        overrides["seed"] = seed
    if out is not None:
        overrides["output_dir"] = str(out)
    if channels:
        overrides["plan"] = {"pairs": [list(p) for p in parse_channel_pairs(channels)]}
    return overrides


def execute(
    command: str,
    config_path: Optional[Path],
    seed: Optional[int],
    out: Optional[Path],
    channels: Optional[str],
    debug: bool,
) -> None:
    """Carrega a configuração, executa o cenário e sai com o código do runner."""
    load_dotenv()
    setup_logging(debug)

    try:
        config = ConfigLoader(config_path).load(_overrides(seed, out, channels))
    except (ConfigError, FileNotFoundError, ValueError) as e:
        typer.echo(f"❌ Configuração inválida: {e}", err=True)
        raise typer.Exit(code=int(ExitCode.INVALID_CONFIG))

    bus = SimpleEventBus()
    bus.subscribe_all(ConsoleReporter().handle_event)
    bus.subscribe_all(create_logging_handler(logging.DEBUG))

    exit_code = ScenarioRunner(config, event_bus=bus).run(command)
    raise typer.Exit(code=int(exit_code))


@app.command()
def plan(
    config_path: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    channels: Optional[str] = ChannelsOption,
    debug: bool = DebugOption,
):
    """Tabela do plano DWDM (frequências, densidade espectral, taxas)."""
    execute("plan", config_path, seed, out, channels, debug)


@app.command()
def tomography(
    config_path: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    channels: Optional[str] = ChannelsOption,
    debug: bool = DebugOption,
):
    """Tomografia de polarização por par de canais (fidelidade e pureza)."""
    execute("tomography", config_path, seed, out, channels, debug)


@app.command()
def franson(
    config_path: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    channels: Optional[str] = ChannelsOption,
    debug: bool = DebugOption,
):
    """Verificação de FSR e franjas de interferência de dois fótons."""
    execute("franson", config_path, seed, out, channels, debug)


@app.command()
def qkd(
    config_path: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    channels: Optional[str] = ChannelsOption,
    debug: bool = DebugOption,
):
    """Sessão QKD longa com derivas e interrupções."""
    execute("qkd", config_path, seed, out, channels, debug)


@app.command()
def timetags(
    config_path: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    channels: Optional[str] = ChannelsOption,
    debug: bool = DebugOption,
):
    """Fluxos de time-tags Monte-Carlo e análise de coincidências."""
    execute("timetags", config_path, seed, out, channels, debug)


if __name__ == "__main__":
    app()
