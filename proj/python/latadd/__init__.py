"""Additive approximation of lattice conditional means.

Thin Python surface over the C++ core: field simulation, neighbour-design
extraction, smooth backfitting, bandwidth selection, wild-bootstrap bands,
and the auto-normal benchmark with its parametric-bootstrap linearity test.
"""

from ._latadd import (
    AdditiveFit,
    AutoNormalParams,
    CiResult,
    ComponentFunction,
    ConfidenceBand,
    CvResult,
    EvalGrid,
    LatticeField,
    LinearityTestResult,
    RegressionSample,
    __version__,
    backfit,
    bootstrap_ci,
    coding_fit,
    density_1d,
    direct_additive_oracle,
    extract_samples,
    kernel_value,
    kh_value,
    linearity_statistic,
    linearity_test,
    nw_regress_1d,
    read_field_csv,
    read_field_pgm,
    select_bandwidth,
    simulate_autonormal,
    simulate_unilateral,
    wild_resample,
    write_field_csv,
)

__all__ = [
    "AdditiveFit",
    "AutoNormalParams",
    "CiResult",
    "ComponentFunction",
    "ConfidenceBand",
    "CvResult",
    "EvalGrid",
    "LatticeField",
    "LinearityTestResult",
    "RegressionSample",
    "__version__",
    "backfit",
    "bootstrap_ci",
    "coding_fit",
    "density_1d",
    "direct_additive_oracle",
    "extract_samples",
    "kernel_value",
    "kh_value",
    "linearity_statistic",
    "linearity_test",
    "nw_regress_1d",
    "read_field_csv",
    "read_field_pgm",
    "select_bandwidth",
    "simulate_autonormal",
    "simulate_unilateral",
    "wild_resample",
    "write_field_csv",
]
