"""Cenários executáveis pela CLI (um por comando)."""

from src.sagnac.scenarios.base import BaseScenario
from src.sagnac.scenarios.registry import ScenarioRegistry

__all__ = ["BaseScenario", "ScenarioRegistry"]
