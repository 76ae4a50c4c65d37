"""Reporters de eventos de cenário."""

from src.sagnac.reporters.console import ConsoleReporter

__all__ = ["ConsoleReporter"]
