"""Estados de polarização de dois fótons, cálculo de Jones e métricas."""

from src.sagnac.quantum.jones import (
    ANALYZER_SETTINGS,
    JONES_VECTORS,
    PolarizationProjector,
    analyzer_projector,
    misalignment_unitary,
    waveplate_unitary,
)
from src.sagnac.quantum.states import (
    BASIS_LABELS,
    DensityMatrix,
    SagnacState,
    StateError,
    apply_local_unitaries,
    clamp_to_physical,
    coincidence_probability,
    concurrence,
    fidelity_to_phi_plus,
    maximally_mixed,
    phi_plus,
    pump_to_state,
    purity,
    sagnac_state,
    trace_distance,
    werner_mix,
)

__all__ = [
    "ANALYZER_SETTINGS",
    "JONES_VECTORS",
    "PolarizationProjector",
    "analyzer_projector",
    "misalignment_unitary",
    "waveplate_unitary",
    "BASIS_LABELS",
    "DensityMatrix",
    "SagnacState",
    "StateError",
    "apply_local_unitaries",
    "clamp_to_physical",
    "coincidence_probability",
    "concurrence",
    "fidelity_to_phi_plus",
    "maximally_mixed",
    "phi_plus",
    "pump_to_state",
    "purity",
    "sagnac_state",
    "trace_distance",
    "werner_mix",
]
