"""
Registry de cenários.

Uso:
    ```python
    scenario = ScenarioRegistry().get("tomography")
    outcome = scenario.run(cfg, out_dir, bus)
    ```
"""

from typing import Dict, List, Optional

from src.sagnac.interfaces import Registry, ScenarioStrategy


class ScenarioRegistry(Registry):
    """Registry singleton dos comandos disponíveis."""

    _instance: Optional["ScenarioRegistry"] = None
    _scenarios: Dict[str, ScenarioStrategy] = {}
    _initialized: bool = False

    def __new__(cls) -> "ScenarioRegistry":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not ScenarioRegistry._initialized:
            self._register_defaults()
            ScenarioRegistry._initialized = True

    def _register_defaults(self) -> None:
        # Import tardio para evitar circular imports
        from src.sagnac.scenarios.franson import FransonScenario
        from src.sagnac.scenarios.plan import PlanScenario
        from src.sagnac.scenarios.qkd import QkdScenario
        from src.sagnac.scenarios.timetags import TimetagsScenario
        from src.sagnac.scenarios.tomography import TomographyScenario

        for scenario in (
            PlanScenario(),
            TomographyScenario(),
            FransonScenario(),
            QkdScenario(),
            TimetagsScenario(),
        ):
            self._scenarios[scenario.command] = scenario

    def register(self, key: str, item: ScenarioStrategy) -> None:
        self._scenarios[key] = item

    def get(self, key: str) -> Optional[ScenarioStrategy]:
        return self._scenarios.get(key)

    def list_keys(self) -> List[str]:
        return list(self._scenarios.keys())

    def require(self, key: str) -> ScenarioStrategy:
        scenario = self.get(key)
        if scenario is None:
            raise ValueError(f"Comando '{key}' não suportado. Disponíveis: {self.list_keys()}")
        return scenario

    @classmethod
    def reset(cls) -> None:
        """Reseta o registry (útil para testes)."""
        cls._scenarios.clear()
        cls._initialized = False
        cls._instance = None
