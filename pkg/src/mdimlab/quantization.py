"""Static and dynamical quantization numbers of finitely supported measures.

The W_p quantization number at scale eps is the least size of a center
set F (drawn from the space's own points) with integral d(x, F)^p
dmu <= eps^p.  The LP quantization number is the least number of closed
eps-balls centered at points whose union carries mass >= 1 - eps,
clamped to at least 1 so the approximating measure has nonempty support.
Dynamical curves evaluate these numbers on Bowen lifts of a symbolic
system over a range of horizons n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .measures import FiniteMeasure
from .metric_core import FiniteMetricSpace
from .systems import SymbolicSystem, lift
from . import solvers
from .solvers import NodeBudgetExceeded

__all__ = [
    "QuantizationResult",
    "QuantCurve",
    "quantization_number",
    "dynamical_quantization_curve",
    "product_measure_rule",
    "uniform_measure_rule",
]


@dataclass(frozen=True)
class QuantizationResult:
    value: int
    centers: tuple[int, ...]
    objective: float
    exact: bool
    kind: str  # "wp" | "lp"
    p: float | None
    eps: float


@dataclass(frozen=True)
class QuantCurve:
    entries: tuple[tuple[int, int], ...]  # (n, Q_n)
    metric_kind: str
    p: float | None
    eps: float

    def counts(self) -> list[int]:
        return [q for _, q in self.entries]

    def ns(self) -> list[int]:
        return [n for n, _ in self.entries]


def _wp_cost(mu: FiniteMeasure, centers: list[int], p: float) -> float:
    d = mu.space.dmatrix[:, centers].min(axis=1)
    return float(mu.weights @ (d**p))


def _wp_greedy(mu: FiniteMeasure, eps_p: float, p: float) -> list[int]:
    """Add the cost-minimizing center until the budget eps_p is met (upper bound)."""
    P = len(mu.space)
    dp = mu.space.dmatrix**p
    w = mu.weights
    chosen: list[int] = []
    current = np.full(P, np.inf)
    while True:
        best_cost, pick = None, -1
        for c in range(P):
            if c in chosen:
                continue
            cost = float(w @ np.minimum(current, dp[:, c]))
            if best_cost is None or cost < best_cost:
                best_cost, pick = cost, c
        chosen.append(pick)
        current = np.minimum(current, dp[:, pick])
        if float(w @ current) <= eps_p:
            return chosen


def _wp_decision(
    mu: FiniteMeasure, k: int, eps_p: float, p: float, node_budget: int
) -> list[int] | None:
    """Lexicographically first F with |F| <= k and cost <= eps_p, or None."""
    P = len(mu.space)
    dp = mu.space.dmatrix**p
    w = mu.weights
    nodes = 0
    # suffix_min[s] = per-point minimum of d^p over candidate centers s..P-1
    suffix_min = np.empty((P + 1, P))
    suffix_min[P] = np.inf
    for s in range(P - 1, -1, -1):
        suffix_min[s] = np.minimum(suffix_min[s + 1], dp[:, s])

    def dfs(start: int, depth: int, current: np.ndarray) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded("quantization decision node budget exceeded")
        finite = np.where(np.isinf(current), 0.0, current)
        if not np.any(np.isinf(current)) and float(w @ finite) <= eps_p:
            return []
        if depth == k:
            return None
        for s in range(start, P - (k - depth) + 1):
            look = np.minimum(current, suffix_min[s])
            if np.any(np.isinf(look)) or float(w @ look) > eps_p:
                return None  # even with every remaining candidate, infeasible
            res = dfs(s + 1, depth + 1, np.minimum(current, dp[:, s]))
            if res is not None:
                return [s] + res
        return None

    return dfs(0, 0, np.full(P, np.inf))


def quantization_number(
    mu: FiniteMeasure,
    eps: float,
    kind: str = "lp",
    p: float = 1.0,
    method: str = "exact",
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> QuantizationResult:
    """Least center count approximating mu within eps in the chosen metric.

    kind="wp": binary search on the center count with an exact subset
    decision procedure (or greedy cost descent for method="greedy").
    kind="lp": minimum partial cover by closed eps-balls reaching mass
    >= 1 - eps, clamped below by 1.
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    space = mu.space
    P = len(space)
    if kind == "wp":
        if p < 1:
            raise ValueError("p must be >= 1")
        eps_p = eps**p
        if method == "greedy":
            centers = _wp_greedy(mu, eps_p, p)
            return QuantizationResult(
                len(centers), tuple(sorted(centers)), _wp_cost(mu, centers, p), False, "wp", p, eps
            )
        if method != "exact":
            raise ValueError("method must be 'exact' or 'greedy'")
        lo, hi = 1, len(mu.support)
        best_witness = list(mu.support)
        while lo < hi:
            mid = (lo + hi) // 2
            witness = _wp_decision(mu, mid, eps_p, p, node_budget)
            if witness is not None:
                hi = mid
                best_witness = witness
            else:
                lo = mid + 1
        if lo == hi:
            witness = _wp_decision(mu, lo, eps_p, p, node_budget)
            if witness is not None:
                best_witness = witness
        return QuantizationResult(
            len(best_witness),
            tuple(sorted(best_witness)),
            _wp_cost(mu, best_witness, p),
            True,
            "wp",
            p,
            eps,
        )

    if kind != "lp":
        raise ValueError("kind must be 'wp' or 'lp'")
    threshold = 1.0 - eps
    if threshold <= 0:
        # Zero balls would reach the mass bound, but the approximant needs
        # nonempty support; clamp to a single ball at the heaviest atom.
        center = int(np.argmax(mu.weights))
        from .measures import ball_mass

        return QuantizationResult(
            1, (center,), ball_mass(mu, center, eps, closed=True), True, "lp", None, eps
        )
    balls = space.dmatrix <= eps
    if method == "greedy":
        witness = solvers.greedy_partial_cover(balls, mu.weights, threshold, strict=False)
        exact = False
    elif method == "exact":
        _, witness = solvers.min_partial_cover(
            balls, mu.weights, threshold, strict=False, node_budget=node_budget
        )
        exact = True
    else:
        raise ValueError("method must be 'exact' or 'greedy'")
    value = max(1, len(witness))
    if not witness:
        witness = [int(np.argmax(mu.weights))]
    covered = balls[list(witness)].any(axis=0)
    return QuantizationResult(
        value, tuple(sorted(witness)), float(mu.weights[covered].sum()), exact, "lp", None, eps
    )


def product_measure_rule(nu: np.ndarray) -> Callable:
    """Measure rule: i.i.d. product of nu truncated to each lift's words."""
    from .measures import product_measure

    def rule(sys: SymbolicSystem, n: int, space: FiniteMetricSpace, states) -> FiniteMeasure:
        return product_measure(sys, nu, n, space=space, states=states)

    return rule


def uniform_measure_rule() -> Callable:
    def rule(sys: SymbolicSystem, n: int, space: FiniteMetricSpace, states) -> FiniteMeasure:
        return FiniteMeasure.uniform(space)

    return rule


def dynamical_quantization_curve(
    sys: SymbolicSystem,
    mu_rule: Callable,
    eps: float,
    kind: str,
    n_range,
    p: float = 1.0,
    method: str = "exact",
    max_states: int = 2_000_000,
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> QuantCurve:
    """Quantization numbers of mu_rule's measures on Bowen lifts over n_range."""
    entries = []
    for n in n_range:
        space, states = lift(sys, n, max_states=max_states)
        mu = mu_rule(sys, n, space, states)
        res = quantization_number(mu, eps, kind=kind, p=p, method=method, node_budget=node_budget)
        entries.append((int(n), int(res.value)))
    return QuantCurve(tuple(entries), kind, p if kind == "wp" else None, eps)
