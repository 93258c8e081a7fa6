"""Outage and rate analysis for pinching-antenna coverage of a circular region.

Closed-form outage probability and average achievable rate for four
waveguide configurations (full/partial coverage, with/without propagation
loss), a seeded Monte-Carlo oracle for validation, and a CLI harness for
parameter sweeps and the optimal-half-length search.
"""

from .analysis_full import (
    MetricResult,
    outage_fwl,
    outage_fwnl,
    rate_fwl,
    rate_fwnl,
)
from .analysis_partial import (
    LengthSearchResult,
    optimal_length_search,
    outage_pwl,
    outage_pwnl,
    rate_pwl,
    rate_pwnl,
)
from .montecarlo import McEstimate, estimate_outage, estimate_rate, snr_sample, snr_values
from .numerics import (
    ChebyshevRule,
    RootReport,
    classify_crossings,
    dilog,
    dilog_diff,
    find_root_bracketed,
)
from .params import (
    DerivedConstants,
    Scenario,
    SystemParams,
    db_to_linear,
    dbm_to_watts,
    derive_constants,
    linear_to_db,
    watts_to_dbm,
)

__version__ = "0.1.0"

__all__ = [
    "ChebyshevRule",
    "DerivedConstants",
    "LengthSearchResult",
    "McEstimate",
    "MetricResult",
    "RootReport",
    "Scenario",
    "SystemParams",
    "classify_crossings",
    "db_to_linear",
    "dbm_to_watts",
    "derive_constants",
    "dilog",
    "dilog_diff",
    "estimate_outage",
    "estimate_rate",
    "find_root_bracketed",
    "linear_to_db",
    "optimal_length_search",
    "outage_fwl",
    "outage_fwnl",
    "outage_pwl",
    "outage_pwnl",
    "rate_fwl",
    "rate_fwnl",
    "rate_pwl",
    "rate_pwnl",
    "snr_sample",
    "snr_values",
    "watts_to_dbm",
]
