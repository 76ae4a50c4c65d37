"""Tomografia de polarização de dois qubits (16 projeções)."""

from src.sagnac.tomography.linear import design_matrix, invert_vector, linear_inversion
from src.sagnac.tomography.mle import (
    TomographyResult,
    mle_reconstruct,
    params_to_t,
    poisson_log_likelihood,
    rho_to_t,
    t_to_params,
    t_to_rho,
)
from src.sagnac.tomography.schedule import (
    CountRecord,
    TomographyError,
    TomographySchedule,
    expected_counts,
    read_counts_csv,
    records_from_vector,
    simulate_tomography_counts,
    write_counts_csv,
)
from src.sagnac.tomography.sweep import SweepEntry, SweepReport, run_channel_sweep

__all__ = [
    "CountRecord",
    "SweepEntry",
    "SweepReport",
    "TomographyError",
    "TomographyResult",
    "TomographySchedule",
    "design_matrix",
    "expected_counts",
    "invert_vector",
    "linear_inversion",
    "mle_reconstruct",
    "params_to_t",
    "poisson_log_likelihood",
    "read_counts_csv",
    "records_from_vector",
    "rho_to_t",
    "run_channel_sweep",
    "simulate_tomography_counts",
    "t_to_params",
    "t_to_rho",
    "write_counts_csv",
]
