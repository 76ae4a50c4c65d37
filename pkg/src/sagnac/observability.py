"""
Tracing OpenTelemetry dos cenários.

Sem ``ENABLE_OTEL`` os spans (``scenario.<comando>``, ``tomography.channel``)
vão para o provider no-op da API e não custam nada. Com ele ativo, são
exportados via OTLP/gRPC para ``OTLP_ENDPOINT``.
"""

from __future__ import annotations

import atexit
import logging
import os
from typing import Optional

from opentelemetry import trace
from pydantic import BaseModel

logger = logging.getLogger("sagnac.observability")

TRACER_NAME = "sagnac"
TRUTHY = {"1", "true", "yes", "on", "sim"}

_exporting = False


class ObservabilityConfig(BaseModel):
    enable_otel: bool = False
    otlp_endpoint: Optional[str] = None
    service_name: str = "sagnac-network-sim"

    @classmethod
    def from_env(
        cls,
        *,
        force_enable: Optional[bool] = None,
        otlp_endpoint: Optional[str] = None,
        service_name: Optional[str] = None,
    ) -> "ObservabilityConfig":
        """Argumentos explícitos têm precedência sobre o ambiente."""
        enabled = force_enable
        if enabled is None:
            enabled = os.getenv("ENABLE_OTEL", "").strip().lower() in TRUTHY
        return cls(
            enable_otel=enabled,
            otlp_endpoint=otlp_endpoint or os.getenv("OTLP_ENDPOINT") or None,
            service_name=service_name or os.getenv("OTEL_SERVICE_NAME", "sagnac-network-sim"),
        )


def setup_observability(
    *,
    force_enable: Optional[bool] = None,
    otlp_endpoint: Optional[str] = None,
    service_name: Optional[str] = None,
) -> bool:
    """Instala o TracerProvider com exportador OTLP uma única vez. Retorna True se exporta."""
    global _exporting
    if _exporting:
        return True

    config = ObservabilityConfig.from_env(
        force_enable=force_enable, otlp_endpoint=otlp_endpoint, service_name=service_name
    )
    if not config.enable_otel:
        logger.debug("Tracing desabilitado (ENABLE_OTEL ausente)")
        return False

    try:
        from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
        from opentelemetry.sdk.resources import Resource
        from opentelemetry.sdk.trace import TracerProvider
        from opentelemetry.sdk.trace.export import BatchSpanProcessor
    except ImportError as exc:
        logger.error("Exportador OTLP indisponível: %s", exc)
        return False

    exporter = OTLPSpanExporter(endpoint=config.otlp_endpoint) if config.otlp_endpoint else OTLPSpanExporter()
    provider = TracerProvider(resource=Resource.create({"service.name": config.service_name}))
    provider.add_span_processor(BatchSpanProcessor(exporter))
    trace.set_tracer_provider(provider)
    _exporting = True
    logger.info("Spans exportados para %s", config.otlp_endpoint or "o endpoint OTLP padrão")
    return True


def get_tracer() -> trace.Tracer:
    return trace.get_tracer(TRACER_NAME)


def shutdown_observability() -> None:
    """Flush dos spans pendentes na saída do processo."""
    provider = trace.get_tracer_provider()
    shutdown = getattr(provider, "shutdown", None)
    if shutdown is None:
        return
    try:
        shutdown()
    except Exception as exc:  # pragma: no cover - só registra
        logger.warning("Falha no flush dos spans: %s", exc)


atexit.register(shutdown_observability)
