"""Closed-form outage probability and average rate, full-coverage waveguide.

With the antenna pinned to the device abscissa the link distance depends
only on the transverse offset y (lossless case) or on (x, y) through the
guided-path attenuation (lossy case).  Outage reduces to the distribution
of |y|; the lossy rate integral reduces to a dilogarithm difference under
the substitution v = exp(-alpha (x + r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._outage_lossy import evaluate_lossy_outage
from .geometry import cdf_abs_y
from .numerics import ChebyshevRule, _dilog_diff_array
from .params import (
    DEFAULT_QUADRATURE_NODES,
    Scenario,
    SystemParams,
    derive_constants,
)

CASE_INTERIOR = "interior"


@dataclass(frozen=True)
class MetricResult:
    """One evaluated performance metric.

    ``value`` is a probability for outage metrics and bits/s/Hz for rate
    metrics; ``case_id`` records the dispatched branch of a piecewise
    expression; ``quadrature_nodes`` the node count of a quadrature-based
    rate.
    """

    value: float
    scenario: Scenario
    case_id: str | None = None
    quadrature_nodes: int | None = None


def outage_fwnl(p: SystemParams) -> MetricResult:
    """Outage probability, full coverage, lossless guide.

    Outage holds where y^2 >= A, so the probability is the complement of
    the |y| CDF at sqrt(A), with saturation at A <= 0 and A >= r^2.
    """
    A = derive_constants(p).A
    if A >= p.r * p.r:
        return MetricResult(0.0, Scenario.FWNL, case_id="no-outage")
    if A <= 0.0:
        return MetricResult(1.0, Scenario.FWNL, case_id="all-outage")
    value = 1.0 - cdf_abs_y(math.sqrt(A), p.r)
    return MetricResult(value, Scenario.FWNL, case_id=CASE_INTERIOR)


def rate_fwnl(p: SystemParams) -> MetricResult:
    """Average achievable rate, full coverage, lossless guide (exact)."""
    d = derive_constants(p)
    G, L = d.Gamma, d.Lambda
    value = (math.log1p(d.eta * p.p_t / (p.sigma2 * p.h * p.h))
             + 2.0 * (math.log((1.0 + G) / (1.0 + L))
                      + 0.5 * (1.0 - G) / (1.0 + G)
                      - 0.5 * (1.0 - L) / (1.0 + L))) / math.log(2.0)
    return MetricResult(value, Scenario.FWNL)


def outage_fwl(p: SystemParams) -> MetricResult:
    """Outage probability, full coverage, lossy guide.

    Dispatches on the crossing classifier: one boundary crossing plus a
    threshold zero, two crossings, or the degenerate all/none regimes.
    A lossless configuration routes to :func:`outage_fwnl` (the threshold
    zero is undefined at alpha = 0).
    """
    if p.alpha == 0.0:
        inner = outage_fwnl(p)
        return MetricResult(inner.value, Scenario.FWL, case_id=inner.case_id)
    value, case = evaluate_lossy_outage(p, Scenario.FWL)
    return MetricResult(value, Scenario.FWL, case_id=case)


def rate_fwl(p: SystemParams, nodes: int = DEFAULT_QUADRATURE_NODES) -> MetricResult:
    """Average achievable rate, full coverage, lossy guide.

    Gauss-Chebyshev sum over the transverse coordinate of the dilogarithm
    difference produced by integrating the log-SNR across each chord in
    the attenuation variable; normalized by the disk area and ln 2.
    """
    if nodes < 2:
        raise ValueError(f"need at least 2 nodes, got {nodes!r}")
    if p.alpha == 0.0:
        inner = rate_fwnl(p)
        return MetricResult(inner.value, Scenario.FWL, quadrature_nodes=inner.quadrature_nodes)
    d = derive_constants(p)
    rule = ChebyshevRule.of_order(nodes)
    y = p.r * rule.nodes
    rho = p.r * rule.node_sines
    k = d.eta * p.p_t / (p.sigma2 * (y * y + p.h * p.h))
    z_hi = -k * np.exp(-p.alpha * (rho + p.r))   # deeper attenuation end
    z_lo = -k * np.exp(p.alpha * (rho - p.r))
    total = float(np.sum(rule.node_sines * _dilog_diff_array(z_hi, z_lo)))
    value = total / (p.alpha * p.r * nodes * math.log(2.0))
    return MetricResult(value, Scenario.FWL, quadrature_nodes=nodes)
