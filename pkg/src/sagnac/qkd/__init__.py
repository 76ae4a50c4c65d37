"""QKD energia-tempo: orçamento de enlace, peneiramento e taxa de chave."""

from src.sagnac.qkd.keyrate import (
    DEFAULT_F_EC,
    binary_entropy,
    binary_entropy_array,
    critical_qber_x,
    secret_fraction,
    secret_key_rate,
)
from src.sagnac.qkd.link import (
    LinkBudget,
    LinkConfig,
    link_budget,
    multiplexed_key_rates,
    multiplexing_gain,
)
from src.sagnac.qkd.session import DriftEvent, SessionReport, load_drift_events, simulate_session
from src.sagnac.qkd.sifting import (
    BASIS_X,
    BASIS_Z,
    LabeledTagStream,
    SiftedKey,
    SiftingError,
    sift,
    simulate_labeled_streams,
)

__all__ = [
    "BASIS_X",
    "BASIS_Z",
    "DEFAULT_F_EC",
    "DriftEvent",
    "LabeledTagStream",
    "LinkBudget",
    "LinkConfig",
    "SessionReport",
    "SiftedKey",
    "SiftingError",
    "binary_entropy",
    "binary_entropy_array",
    "critical_qber_x",
    "link_budget",
    "load_drift_events",
    "multiplexed_key_rates",
    "multiplexing_gain",
    "secret_fraction",
    "secret_key_rate",
    "sift",
    "simulate_labeled_streams",
    "simulate_session",
]
