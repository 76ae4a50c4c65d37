"""Simulação de detectores SNSPD e análise de coincidências."""

from src.sagnac.detection.coincidence import (
    DEFAULT_ACCIDENTAL_OFFSET_PS,
    DEFAULT_WINDOW_PS,
    accidental_rate,
    coincidence_matrix,
    count_coincidences,
    delay_histogram,
    find_delay,
    match_coincidences,
)
from src.sagnac.detection.io import TimeTagFormatError, export_csv, import_csv, read_ttag, write_ttag
from src.sagnac.detection.models import (
    DEFAULT_JITTER_SIGMA_PS,
    CoincidenceResult,
    DetectorModel,
    TimeTagStream,
    UnsortedStreamError,
)
from src.sagnac.detection.simulate import (
    PS_PER_S,
    StreamOverflowError,
    dead_time_filter,
    simulate_pair_streams,
)

__all__ = [
    "DEFAULT_ACCIDENTAL_OFFSET_PS",
    "DEFAULT_JITTER_SIGMA_PS",
    "DEFAULT_WINDOW_PS",
    "PS_PER_S",
    "CoincidenceResult",
    "DetectorModel",
    "StreamOverflowError",
    "TimeTagFormatError",
    "TimeTagStream",
    "UnsortedStreamError",
    "accidental_rate",
    "coincidence_matrix",
    "count_coincidences",
    "dead_time_filter",
    "delay_histogram",
    "export_csv",
    "find_delay",
    "import_csv",
    "match_coincidences",
    "read_ttag",
    "simulate_pair_streams",
    "write_ttag",
]
