"""Growth-rate regression and dimension-ratio reports.

Two nested scale limits are approximated by auditable surrogates: the
inner limit in the horizon n becomes a least-squares slope of log count
against n with forward-difference extremes standing in for limsup and
liminf; the outer limit in eps becomes the extremes of slope/log(1/eps)
over the finer (tail) half of the eps ladder.  Full tables are retained
so no information is lost to the summary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .covering import interval_cover_count, max_separated_1d

__all__ = [
    "GrowthEstimate",
    "DimensionReport",
    "growth_rate",
    "dimension_report",
    "full_shift_count_bounds",
    "geometric_curve",
]

RESIDUAL_THRESHOLD = 1e-6


@dataclass(frozen=True)
class GrowthEstimate:
    slope: float
    intercept: float
    window: tuple[int, int]
    residual_max: float
    upper_proxy: float  # max forward difference of log counts
    lower_proxy: float  # min forward difference


@dataclass(frozen=True)
class DimensionReport:
    ladder: tuple[float, ...]
    rates: tuple[GrowthEstimate, ...]
    ratio_upper: float
    ratio_lower: float
    fit_diagnostics: dict = field(default_factory=dict)


def growth_rate(curve, window: tuple[int, int] | None = None) -> GrowthEstimate:
    """Least-squares slope of log count over n, with difference proxies.

    curve is a list of (n, count) pairs with counts >= 1; window
    restricts to n_min <= n <= n_max.  The extreme forward differences
    bracket the slope whenever counts come from a genuine curve.
    """
    pts = sorted((int(n), float(c)) for n, c in curve)
    if window is not None:
        lo, hi = window
        pts = [(n, c) for n, c in pts if lo <= n <= hi]
    if len(pts) < 3:
        raise ValueError("need at least 3 curve points")
    if any(c < 1 for _, c in pts):
        raise ValueError("counts must be >= 1")
    ns = np.asarray([n for n, _ in pts], dtype=float)
    ys = np.log(np.asarray([c for _, c in pts]))
    if np.any(np.diff(ns) <= 0):
        raise ValueError("duplicate n in curve")
    if np.all(ys == ys[0]):
        # Constant curves are exactly flat; avoid least-squares float dust.
        slope, intercept = 0.0, float(ys[0])
    else:
        slope, intercept = np.polyfit(ns, ys, 1)
    fit = slope * ns + intercept
    diffs = np.diff(ys) / np.diff(ns)
    return GrowthEstimate(
        slope=float(slope),
        intercept=float(intercept),
        window=(int(ns[0]), int(ns[-1])),
        residual_max=float(np.max(np.abs(ys - fit))),
        upper_proxy=float(diffs.max()),
        lower_proxy=float(diffs.min()),
    )


def dimension_report(per_eps_rates, ladder) -> DimensionReport:
    """Extremize rate/log(1/eps) over the finer half of the eps ladder.

    per_eps_rates holds one GrowthEstimate (or bare slope) per ladder
    entry; the ladder must be strictly decreasing with at least 3 scales.
    """
    ladder = tuple(float(e) for e in ladder)
    if len(ladder) < 3:
        raise ValueError("need at least 3 scales")
    if any(not a > b for a, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be strictly decreasing")
    if any(e >= 1.0 for e in ladder):
        raise ValueError("scales must be below 1 for log(1/eps) ratios")
    rates = tuple(
        r if isinstance(r, GrowthEstimate) else GrowthEstimate(float(r), 0.0, (0, 0), 0.0, float(r), float(r))
        for r in per_eps_rates
    )
    if len(rates) != len(ladder):
        raise ValueError("one rate per ladder entry required")
    tail = math.ceil(len(ladder) / 2)
    ratios = [r.slope / math.log(1.0 / e) for r, e in zip(rates, ladder)]
    tail_ratios = ratios[-tail:]
    diagnostics = {
        "ratios": ratios,
        "tail_scales": list(ladder[-tail:]),
        "residual_max": [r.residual_max for r in rates],
    }
    return DimensionReport(
        ladder=ladder,
        rates=rates,
        ratio_upper=float(max(tail_ratios)),
        ratio_lower=float(min(tail_ratios)),
        fit_diagnostics=diagnostics,
    )


def geometric_curve(base: float, n_range, scale: float = 1.0) -> list[tuple[int, float]]:
    """Counts scale * base**n; handy for analytic bound curves."""
    return [(int(n), scale * base ** int(n)) for n in n_range]


def counts_csv(per_eps_curves: dict, exact_flags: dict | None = None) -> str:
    """Serialize {eps: [(n, count), ...]} as 'eps,n,count,exact' lines.

    Scales are emitted in decreasing order, horizons increasing; repr
    formatting keeps reruns byte-identical.
    """
    lines = ["eps,n,count,exact"]
    for eps in sorted(per_eps_curves, reverse=True):
        exact = True if exact_flags is None else exact_flags.get(eps, True)
        for n, c in sorted(per_eps_curves[eps]):
            lines.append(f"{float(eps)!r},{int(n)},{c!r},{str(bool(exact)).lower()}")
    return "\n".join(lines) + "\n"


def report_summary(report: DimensionReport) -> dict:
    """JSON-ready summary record with ratios and fit diagnostics."""
    return {
        "ladder": list(report.ladder),
        "ratio_upper": report.ratio_upper,
        "ratio_lower": report.ratio_lower,
        "rates": [
            {
                "slope": r.slope,
                "intercept": r.intercept,
                "window": list(r.window),
                "residual_max": r.residual_max,
                "upper_proxy": r.upper_proxy,
                "lower_proxy": r.lower_proxy,
            }
            for r in report.rates
        ],
        "fit_diagnostics": report.fit_diagnostics,
    }


def full_shift_count_bounds(alphabet, W: int, eps: float) -> tuple[int, int]:
    """Analytic per-coordinate count bounds for a full shift at scale eps.

    Returns (sep, cov): a subset of the alphabet with pairwise gaps > eps
    gives sep**n separated words at every horizon (window coordinates held
    constant), so S(n, eps) >= sep**n; a point-centered interval cover of
    the alphabet at radius eps / sum of window weights gives product
    center words with N(n, eps) <= cov**(n + 2W).
    """
    values = alphabet.values
    sep = len(max_separated_1d(values, eps))
    sigma = 3.0 - 2.0 ** (1 - W)  # sum of 2^{-|k|} over |k| <= W
    cov = interval_cover_count(values, eps / sigma, closed=False, centers="points")
    return sep, cov
