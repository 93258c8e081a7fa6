"""Closed-form outage probability and average rate, partial-coverage waveguide.

The antenna clamps to a centered segment of half-length l < r, so the
horizontal distance D to the segment replaces |y|.  Outage follows from
the stadium CDF of D; the rates integrate the chord-wise log-SNR over the
three coverage segments; the lossy outage dispatches over the root
arrangements of the threshold/clearance curves, including the search for
the half-length that optimizes either metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._outage_lossy import evaluate_lossy_outage
from .analysis_full import MetricResult
from .geometry import cdf_horizontal_distance
from .numerics import ChebyshevRule
from .params import DEFAULT_QUADRATURE_NODES, Scenario, SystemParams, derive_constants

_STADIUM_CASES = ("stadium", "stadium-caps", "band")


def outage_pwnl(p: SystemParams) -> MetricResult:
    """Outage probability, partial coverage, lossless guide.

    Outage holds where D^2 >= A, so the probability is the complement of
    the stadium CDF at sqrt(A); the case id names the active CDF branch.
    Equals the full-coverage expression when l = r.
    """
    A = derive_constants(p).A
    r, l = p.r, p.l
    if A <= 0.0:
        return MetricResult(1.0, Scenario.PWNL, case_id="all-outage")
    if A >= r * r:
        return MetricResult(0.0, Scenario.PWNL, case_id="no-outage")
    root = math.sqrt(A)
    if root < r - l:
        case = "stadium"
    elif root * root < r * r - l * l:
        case = "stadium-caps"
    else:
        case = "band"
    value = 1.0 - cdf_horizontal_distance(root, r, l)
    return MetricResult(value, Scenario.PWNL, case_id=case)


def _segment_chord_terms(rho2: np.ndarray, gain: np.ndarray | float,
                         base2: np.ndarray | float) -> np.ndarray:
    # chord integral of ln(1 + gain/(y^2 + base2)) over |y| <= rho, halved:
    #   rho ln(1 + gain/(rho^2+base2)) + 2 sqrt(base2+gain) atan(rho/sqrt(base2+gain))
    #   - 2 sqrt(base2) atan(rho/sqrt(base2))
    rho = np.sqrt(np.maximum(rho2, 0.0))
    lifted = np.sqrt(base2 + gain)
    base = np.sqrt(base2)
    return (rho * np.log1p(gain / (rho2 + base2))
            + 2.0 * lifted * np.arctan(rho / lifted)
            - 2.0 * base * np.arctan(rho / base))


def rate_pwnl(p: SystemParams, nodes: int = DEFAULT_QUADRATURE_NODES) -> MetricResult:
    """Average achievable rate, partial coverage, lossless guide.

    Two Gauss-Chebyshev segments: under the covered span the chord
    integral depends on y only; beyond it the end-gap (x - l) joins the
    vertical offset in the link distance.
    """
    if nodes < 2:
        raise ValueError(f"need at least 2 nodes, got {nodes!r}")
    r, l, h = p.r, p.l, p.h
    e = derive_constants(p).eta * p.p_t / p.sigma2
    rule = ChebyshevRule.of_order(nodes)
    w = rule.node_sines
    h2 = h * h

    x1 = 0.5 * l * rule.nodes + 0.5 * l
    seg1 = np.sum(w * _segment_chord_terms(r * r - x1 * x1, e, h2))
    seg2 = 0.0
    if l < r:
        x2 = 0.5 * (r - l) * rule.nodes + 0.5 * (r + l)
        seg2 = np.sum(w * _segment_chord_terms(r * r - x2 * x2, e, h2 + (x2 - l) ** 2))
    total = (0.5 * l * seg1 + 0.5 * (r - l) * seg2) * rule.weight
    value = 4.0 * total / (math.pi * r * r * math.log(2.0))
    return MetricResult(value, Scenario.PWNL, quadrature_nodes=nodes)


def outage_pwl(p: SystemParams) -> MetricResult:
    """Outage probability, partial coverage, lossy guide.

    Dispatches on the crossing classifier across the nine closed-form root
    arrangements and the two degenerate regimes; arrangements without a
    closed form fall back to direct numerical integration (flagged in the
    case id).  A lossless configuration routes to :func:`outage_pwnl`.
    """
    if p.alpha == 0.0:
        inner = outage_pwnl(p)
        return MetricResult(inner.value, Scenario.PWL, case_id=inner.case_id)
    value, case = evaluate_lossy_outage(p, Scenario.PWL)
    return MetricResult(value, Scenario.PWL, case_id=case)


def rate_pwl(p: SystemParams, nodes: int = DEFAULT_QUADRATURE_NODES) -> MetricResult:
    """Average achievable rate, partial coverage, lossy guide.

    Three Gauss-Chebyshev segments: the covered span with running
    attenuation exp(-alpha (x + l)), the far side beyond +l at the full
    guide loss exp(-2 alpha l), and the near side before -l at feed level.
    """
    if nodes < 2:
        raise ValueError(f"need at least 2 nodes, got {nodes!r}")
    if p.alpha == 0.0:
        inner = rate_pwnl(p, nodes)
        return MetricResult(inner.value, Scenario.PWL, quadrature_nodes=nodes)
    r, l, h = p.r, p.l, p.h
    e = derive_constants(p).eta * p.p_t / p.sigma2
    rule = ChebyshevRule.of_order(nodes)
    t, w = rule.nodes, rule.node_sines
    h2 = h * h

    x1 = l * t
    mid = np.sum(w * _segment_chord_terms(r * r - x1 * x1,
                                          e * np.exp(-p.alpha * (x1 + l)), h2))
    far = near = 0.0
    if l < r:
        x2 = 0.5 * (r - l) * t + 0.5 * (r + l)
        far = np.sum(w * _segment_chord_terms(r * r - x2 * x2,
                                              e * math.exp(-2.0 * p.alpha * l),
                                              h2 + (x2 - l) ** 2))
        x3 = 0.5 * (r - l) * t - 0.5 * (r + l)
        near = np.sum(w * _segment_chord_terms(r * r - x3 * x3, e, h2 + (x3 + l) ** 2))
    total = 2.0 * l * mid + (r - l) * far + (r - l) * near
    value = total / (nodes * r * r * math.log(2.0))
    return MetricResult(value, Scenario.PWL, quadrature_nodes=nodes)


# ---------------------------------------------------------------------------
# optimal half-length search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LengthSearchResult:
    """Grid curve and extremum of a metric over the waveguide half-length."""

    best_l: float
    best_value: float
    grid: tuple[tuple[float, float], ...]
    metric: str


def _metric_at(p: SystemParams, l: float, metric: str, nodes: int) -> float:
    q = p.with_(l=l)
    if metric == "outage":
        res = outage_pwl(q) if q.alpha > 0.0 else outage_pwnl(q)
    else:
        res = rate_pwl(q, nodes) if q.alpha > 0.0 else rate_pwnl(q, nodes)
    return res.value


def _golden_section(fun, lo: float, hi: float, tol: float) -> float:
    ratio = 0.5 * (math.sqrt(5.0) - 1.0)
    x1 = hi - ratio * (hi - lo)
    x2 = lo + ratio * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - ratio * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + ratio * (hi - lo)
            f2 = fun(x2)
    return 0.5 * (lo + hi)


def optimal_length_search(p: SystemParams, metric: str = "rate",
                          grid_spec: tuple[float, float, int] | None = None,
                          nodes: int = DEFAULT_QUADRATURE_NODES,
                          refine: bool = True) -> LengthSearchResult:
    """Search the half-length grid for the best metric value.

    Evaluates the closed-form metric (outage minimized, rate maximized) on
    an inclusive linspace grid over (0, r], then optionally sharpens the
    grid optimum by golden-section search between its neighbors down to
    1e-3 m.
    """
    if metric not in ("outage", "rate"):
        raise ValueError(f"metric must be 'outage' or 'rate', got {metric!r}")
    if grid_spec is None:
        grid_spec = (max(0.01, p.r / 50.0), p.r, 50)
    start, stop, steps = grid_spec
    if not (0.0 < start <= stop <= p.r) or steps < 1:
        raise ValueError(f"invalid half-length grid {grid_spec!r}")
    if steps > 1 and (stop - start) / (steps - 1) < 0.01:
        raise ValueError("half-length grid step below 0.01 m")

    grid = np.linspace(start, stop, steps)
    sign = 1.0 if metric == "outage" else -1.0
    objective = lambda l: sign * _metric_at(p, l, metric, nodes)
    values = [_metric_at(p, float(l), metric, nodes) for l in grid]
    best_idx = int(np.argmin([sign * v for v in values]))
    best_l = float(grid[best_idx])
    best_value = values[best_idx]

    # refine only interior optima; a boundary optimum cannot be bracketed and
    # the curve is noise-flat at a degenerate end
    if refine and 0 < best_idx < steps - 1:
        lo = float(grid[best_idx - 1])
        hi = float(grid[best_idx + 1])
        if hi - lo > 1e-3:
            candidate = _golden_section(objective, lo, hi, tol=1e-3)
            cand_value = _metric_at(p, candidate, metric, nodes)
            if sign * cand_value < sign * best_value:
                best_l, best_value = candidate, cand_value

    return LengthSearchResult(best_l=best_l, best_value=best_value,
                              grid=tuple(zip(map(float, grid), values)),
                              metric=metric)
