"""
Configuração de cenários.

Um único arquivo YAML (ou JSON) descreve fonte, plano de canais, detectores
e as opções de cada comando. Todos os padrões reproduzem a fonte
caracterizada: cristal PPLN 2, detectores de 80 % / 50 Hz, plano a partir
de (19, 23) em torno da bomba no ITU 21.
"""

import copy
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.sagnac.detection.coincidence import DEFAULT_WINDOW_PS
from src.sagnac.detection.models import DetectorModel
from src.sagnac.franson.analyzer import FransonConfig
from src.sagnac.qkd.link import LinkConfig
from src.sagnac.qkd.session import DriftEvent, load_drift_events
from src.sagnac.spectral.grid import ChannelPlan, build_channel_plan, nearest_itu_channel
from src.sagnac.spectral.source import CRYSTAL_PRESETS, SourceParams

Pair = Tuple[int, int]


class ConfigError(ValueError):
    """Configuração inválida, com diagnósticos endereçados por linha."""

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        self.diagnostics = diagnostics or []
        details = "".join(f"\n  - {d}" for d in self.diagnostics)
        super().__init__(f"{message}{details}")


def parse_channel_pairs(text: str) -> List[Pair]:
    """Converte ``"19:23,18:24"`` em [(19, 23), (18, 24)]."""
    pairs: List[Pair] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = re.fullmatch(r"(-?\d+)\s*:\s*(-?\d+)", chunk)
        if not match:
            raise ValueError(f"Par de canais inválido: '{chunk}' (esperado a:b)")
        pairs.append((int(match.group(1)), int(match.group(2))))
    if not pairs:
        raise ValueError("Lista de canais vazia")
    return pairs


class PlanSection(BaseModel):
    pump_channel: int = Field(21, description="Canal ITU da bomba")
    n_pairs: int = Field(20, ge=1, description="Número de pares simétricos")
    excluded: List[int] = Field(default_factory=lambda: [20, 22], description="Canais excluídos")
    channel_spacing_ghz: float = Field(100.0, gt=0, description="Espaçamento da grade (GHz)")
    pump_power_mw: float = Field(15.0, ge=0, description="Potência de bomba (mW)")
    pairs: Optional[List[Pair]] = Field(None, description="Pares explícitos (sobrepõe n_pairs)")
    noise_spectrum_csv: Optional[str] = Field(None, description="CSV (nm, contagens/s/nm/mW) do ruído Raman")

    def build(self) -> ChannelPlan:
        if self.pairs:
            return ChannelPlan.from_pairs(
                self.pairs,
                pump=self.pump_channel,
                excluded=set(self.excluded),
                channel_spacing_ghz=self.channel_spacing_ghz,
            )
        return build_channel_plan(
            self.pump_channel,
            self.n_pairs,
            set(self.excluded),
            channel_spacing_ghz=self.channel_spacing_ghz,
        )


class DetectorsSection(BaseModel):
    a: DetectorModel = Field(default_factory=DetectorModel, description="Detector do braço A")
    b: DetectorModel = Field(default_factory=DetectorModel, description="Detector do braço B")


class TomographySection(BaseModel):
    state: Literal["werner", "phi_plus"] = Field("werner", description="Estado verdadeiro por canal")
    werner_p: float = Field(0.96, ge=0.0, le=1.0, description="Peso do Φ+ na mistura de Werner")
    rate_hz: float = Field(1e6, gt=0, description="Taxa de coincidências por configuração (Hz)")
    integration_s: float = Field(1.0, gt=0, description="Tempo de integração por configuração (s)")
    bootstrap: int = Field(100, ge=0, description="Réplicas de bootstrap")
    workers: int = Field(1, ge=1, description="Canais reconstruídos em paralelo")
    misalignment_rad: Dict[str, float] = Field(
        default_factory=dict, description="Rotação residual por par ('a:b' → rad)"
    )

    @field_validator("misalignment_rad")
    @classmethod
    def _check_keys(cls, value: Dict[str, float]) -> Dict[str, float]:
        for key in value:
            parse_channel_pairs(key)
        return value

    def misalignment_for(self, pair: Pair) -> float:
        for key, angle in self.misalignment_rad.items():
            a, b = parse_channel_pairs(key)[0]
            if {a, b} == set(pair):
                return angle
        return 0.0


class FransonSection(FransonConfig):
    visibility: float = Field(0.99, ge=0.0, le=1.0, description="Visibilidade verdadeira")
    mean_counts: float = Field(
        250e3, gt=0, description="Coincidências médias por ponto de fase, somando pico central e satélites"
    )
    phase_points: int = Field(50, ge=5, description="Pontos de fase em um período")
    phase0: float = Field(0.0, description="Fase de offset (rad)")
    integration_s: float = Field(0.5, gt=0, description="Integração por ponto (s)")


class QkdSection(BaseModel):
    link: LinkConfig = Field(default_factory=LinkConfig)
    duration_s: float = Field(3600.0, gt=0, description="Duração da sessão (s)")
    bin_s: float = Field(1.0, gt=0, description="Largura do bin da série temporal (s)")
    base_vis_x: float = Field(0.87, ge=0.0, le=1.0, description="Visibilidade efetiva na base X")
    base_err_z: float = Field(0.047, ge=0.0, le=0.5, description="QBER intrínseco na base Z")
    f_ec: float = Field(1.1, ge=1.0, description="Eficiência da correção de erros")
    sifted_rate_hz: Optional[float] = Field(
        None, ge=0, description="Taxa peneirada fixa; sem valor usa o orçamento do enlace"
    )
    events: List[DriftEvent] = Field(default_factory=list, description="Derivas e interrupções")
    events_file: Optional[str] = Field(None, description="YAML com lista de eventos")

    def all_events(self) -> List[DriftEvent]:
        extra = load_drift_events(self.events_file) if self.events_file else []
        return list(self.events) + extra


class TimetagsSection(BaseModel):
    duration_s: float = Field(0.01, gt=0, description="Duração simulada (s)")
    pair_rate_hz: Optional[float] = Field(
        None, ge=0, description="Taxa de pares; sem valor usa a taxa acoplada do primeiro par"
    )
    window_ps: int = Field(DEFAULT_WINDOW_PS, gt=0, description="Janela de coincidência (ps)")
    accidental_offset_ps: int = Field(50_000, gt=0, description="Deslocamento para acidentais (ps)")
    histogram_bin_ps: int = Field(10, gt=0)
    histogram_span_ps: int = Field(1_000, gt=0)
    max_events: int = Field(50_000_000, gt=0, description="Limite de eventos em memória")
    export_csv: bool = Field(True, description="Exporta os fluxos também em CSV")


class ScenarioConfig(BaseModel):
    version: str = Field("1.0", description="Versão do schema")
    name: str = Field("sagnac", description="Nome do cenário")
    seed: int = Field(0, ge=0, description="Semente mestre (nunca derivada do relógio)")
    output_dir: str = Field("saida", description="Diretório de artefatos")
    source: SourceParams = Field(default_factory=SourceParams)
    plan: PlanSection = Field(default_factory=PlanSection)
    detectors: DetectorsSection = Field(default_factory=DetectorsSection)
    tomography: TomographySection = Field(default_factory=TomographySection)
    franson: FransonSection = Field(default_factory=FransonSection)
    qkd: QkdSection = Field(default_factory=QkdSection)
    timetags: TimetagsSection = Field(default_factory=TimetagsSection)

    @model_validator(mode="before")
    @classmethod
    def _apply_crystal_preset(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        source = data.get("source")
        if isinstance(source, dict) and "crystal" in source:
            source = dict(source)
            crystal = str(source.pop("crystal")).lower()
            if crystal not in CRYSTAL_PRESETS:
                raise ValueError(f"Cristal desconhecido: '{crystal}' (opções: {sorted(CRYSTAL_PRESETS)})")
            merged = CRYSTAL_PRESETS[crystal].model_dump()
            merged.update(source)
            data = {**data, "source": merged}
        return data

    @model_validator(mode="after")
    def _check_cross_sections(self) -> "ScenarioConfig":
        spacing_hz = self.plan.channel_spacing_ghz * 1e9
        if not self.source.pump_linewidth_hz < spacing_hz:
            raise ValueError(
                f"Largura da bomba ({self.source.pump_linewidth_hz:.3g} Hz) deve ser menor que o "
                f"espaçamento da grade ({spacing_hz:.3g} Hz)"
            )
        pump_on_grid = nearest_itu_channel(self.source.pump_wavelength_nm)
        if pump_on_grid != self.plan.pump_channel:
            raise ValueError(
                f"Bomba em {self.source.pump_wavelength_nm} nm cai no canal ITU {pump_on_grid}, "
                f"não no canal {self.plan.pump_channel} do plano"
            )
        self.plan.build()
        return self


# =============================================================================
# Loader
# =============================================================================


def _deep_merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _node_line(root: Optional[yaml.Node], loc: Sequence[Union[str, int]]) -> Optional[int]:
    """Linha (1-based) do nó YAML mais profundo alcançável por ``loc``."""
    node = root
    line = node.start_mark.line + 1 if node is not None else None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if getattr(k, "value", None) == str(key)), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            child = node.value[key]
        else:
            child = None
        if child is None:
            break
        node = child
        line = node.start_mark.line + 1
    return line


class ConfigLoader:
    """
    Carregador de configuração de cenário.

    Resolve placeholders ``${VAR}``, valida em ``ScenarioConfig`` e traduz
    erros de validação em diagnósticos com número de linha.
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self.config_path = str(config_path) if config_path is not None else None
        self._content: str = ""

    def _resolve_env_vars(self, content: str) -> str:
        """Substitui padrões ${VAR_NAME} por valores de ambiente."""
        pattern = re.compile(r"\$\{([^}]+)\}")

        def replace(match):
            return os.getenv(match.group(1), match.group(0))

        return pattern.sub(replace, content)

    def _parse_raw_data(self) -> Dict[str, Any]:
        if self.config_path is None:
            return {}
        if not os.path.exists(self.config_path):
            raise FileNotFoundError(f"Arquivo de configuração não encontrado: {self.config_path}")

        with open(self.config_path, "r", encoding="utf-8") as f:
            self._content = self._resolve_env_vars(f.read())

        try:
            data = yaml.safe_load(self._content)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f"linha {mark.line + 1}" if mark is not None else "posição desconhecida"
            raise ConfigError(f"Erro ao processar YAML/JSON em {self.config_path}", [f"{where}: {e}"])
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f"Raiz de {self.config_path} deve ser um mapeamento")
        return data

    def _diagnostics(self, error: ValidationError) -> List[str]:
        root = yaml.compose(self._content) if self._content else None
        source = self.config_path or "<padrões>"
        diagnostics = []
        for item in error.errors():
            loc = [part for part in item["loc"] if not str(part).startswith("function-")]
            path = ".".join(str(part) for part in loc) or "(raiz)"
            line = _node_line(root, loc) if root is not None else None
            prefix = f"{source}:{line}" if line is not None else source
            diagnostics.append(f"{prefix}: {path}: {item['msg']}")
        return diagnostics

    def load(self, overrides: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
        data = self._parse_raw_data()
        if overrides:
            data = _deep_merge(data, overrides)
        try:
            return ScenarioConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError("Erro de validação da configuração", self._diagnostics(e)) from e
