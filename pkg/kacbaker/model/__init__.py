"""Model module - parameters and exact enumeration ground truth."""

from kacbaker.model.params import Beta, ModelParams, SpinConfig, as_beta, as_real_beta
from kacbaker.model.lattice import (
    site_interaction_sum,
    partition_function_exact,
    exact_trace_ruelle_power,
    exact_trace_gutzwiller_power,
    exact_trace_kac_power,
    free_energy_estimate,
    log_partition_function,
)

__all__ = [
    "Beta",
    "ModelParams",
    "SpinConfig",
    "as_beta",
    "as_real_beta",
    "site_interaction_sum",
    "partition_function_exact",
    "exact_trace_ruelle_power",
    "exact_trace_gutzwiller_power",
    "exact_trace_kac_power",
    "free_energy_estimate",
    "log_partition_function",
]
