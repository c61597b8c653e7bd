"""Separated, spanning and covering counts on finite metric spaces.

Four counts at scale eps: S (max cardinality of a set with pairwise
distance strictly greater than eps), R (min cardinality of a set every
point is strictly within eps of), N (min number of open eps-balls
centered at points covering the space) and C (the closed-ball variant).
Ball centers always range over the space's own points, so N and R agree
on finite spaces.  Comparisons follow the strict conventions exactly:
separated "> eps", spanning/open balls "< eps", closed balls "<= eps".

A one-dimensional interval-covering oracle (exact greedy sweep) backs
box-dimension ladders on alphabets and cross-checks the generic solvers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .metric_core import FiniteMetricSpace
from . import solvers
from .solvers import NodeBudgetExceeded

__all__ = [
    "CountKind",
    "Method",
    "CountResult",
    "count",
    "greedy_net",
    "box_dimension_counts",
    "interval_cover_count",
    "max_separated_1d",
    "BoxCount",
]


class CountKind(enum.Enum):
    S = "separated"
    R = "spanning"
    N = "open_ball_cover"
    C = "closed_ball_cover"


class Method(enum.Enum):
    BRUTE_FORCE = "brute_force"
    BRANCH_BOUND = "branch_bound"
    GREEDY = "greedy"
    INTERVAL = "interval"


@dataclass(frozen=True)
class CountResult:
    value: int
    witness: tuple[int, ...]
    exact: bool
    method: Method
    kind: CountKind
    eps: float


def _ball_masks(space: FiniteMetricSpace, eps: float, closed: bool) -> np.ndarray:
    d = space.dmatrix
    return d <= eps if closed else d < eps


def _count_brute_force(space, eps, kind) -> tuple[int, list[int]]:
    import itertools

    P = len(space)
    d = space.dmatrix
    if kind is CountKind.S:
        best, witness = 1, [0]
        for size in range(P, 0, -1):
            for combo in itertools.combinations(range(P), size):
                idx = np.asarray(combo)
                sub = d[np.ix_(idx, idx)]
                if np.all(sub[np.triu_indices(size, 1)] > eps):
                    return size, list(combo)
        return best, witness
    closed = kind is CountKind.C
    balls = _ball_masks(space, eps, closed)
    for size in range(1, P + 1):
        for combo in itertools.combinations(range(P), size):
            if balls[list(combo)].any(axis=0).all():
                return size, list(combo)
    raise AssertionError("full point set always covers itself")


def count(
    space: FiniteMetricSpace,
    eps: float,
    kind: CountKind,
    method: Method = Method.BRANCH_BOUND,
    max_points: int = 4096,
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> CountResult:
    """Exact or greedy S/R/N/C count at scale eps.

    Exact methods require len(space) <= max_points.  Greedy returns a
    lower bound for S (maximal separated set) and an upper bound for
    R/N/C (greedy ball cover), flagged exact=False.
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    P = len(space)
    if P == 0:
        raise ValueError("empty space")
    if method is Method.BRUTE_FORCE and P > 20:
        raise NodeBudgetExceeded("brute force enumerates subsets; restricted to <= 20 points")
    if method in (Method.BRUTE_FORCE, Method.BRANCH_BOUND) and P > max_points:
        raise NodeBudgetExceeded(f"{P} points exceed max_points={max_points}")

    if method is Method.GREEDY:
        if kind is CountKind.S:
            witness = solvers.greedy_clique(space.dmatrix > eps)
        else:
            closed = kind is CountKind.C
            masks = [solvers._bool_to_mask(row) for row in _ball_masks(space, eps, closed)]
            witness = solvers.greedy_set_cover(masks, (1 << P) - 1)
        return CountResult(len(witness), tuple(sorted(witness)), False, method, kind, eps)

    if method is Method.BRUTE_FORCE:
        value, witness = _count_brute_force(space, eps, kind)
        return CountResult(value, tuple(sorted(witness)), True, method, kind, eps)

    if kind is CountKind.S:
        value, witness = solvers.max_clique(space.dmatrix > eps, node_budget)
    else:
        closed = kind is CountKind.C
        masks = [solvers._bool_to_mask(row) for row in _ball_masks(space, eps, closed)]
        value, witness = solvers.min_set_cover(masks, (1 << P) - 1, node_budget)
    return CountResult(value, tuple(sorted(witness)), True, Method.BRANCH_BOUND, kind, eps)


def greedy_net(space: FiniteMetricSpace, eps: float, seed: int = 0) -> list[int]:
    """A set that is pairwise > eps separated and covers every point within <= eps.

    Points are scanned cyclically in index order starting at seed mod P; a
    point joins the net when it is strictly more than eps from everything
    already chosen.  Skipped points are then within eps of the net.
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    P = len(space)
    d = space.dmatrix
    start = seed % P
    chosen: list[int] = []
    for off in range(P):
        i = (start + off) % P
        if all(d[i, j] > eps for j in chosen):
            chosen.append(i)
    return sorted(chosen)


# ---------------------------------------------------------------------------
# One-dimensional covering oracles
# ---------------------------------------------------------------------------


def max_separated_1d(values, eps: float) -> list[int]:
    """Maximum subset of sorted line points with pairwise gaps > eps (exact greedy)."""
    v = np.asarray(values, dtype=float)
    if np.any(np.diff(v) < 0):
        raise ValueError("values must be sorted ascending")
    chosen = [0]
    for i in range(1, len(v)):
        if v[i] - v[chosen[-1]] > eps:
            chosen.append(i)
    return chosen


def interval_cover_count(
    values, eps: float, closed: bool = False, centers: str = "free"
) -> int:
    """Minimum number of radius-eps intervals covering sorted line points.

    centers="free" allows arbitrary real centers (an open interval can hold
    a group exactly when its span is < 2*eps); centers="points" restricts
    centers to the points themselves.  Both greedy sweeps are exact on the
    line.
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n == 0:
        raise ValueError("empty point set")
    if np.any(np.diff(v) < 0):
        raise ValueError("values must be sorted ascending")

    def fits(a: float, b: float) -> bool:
        span = b - a
        return span <= 2 * eps if closed else span < 2 * eps

    cnt = 0
    i = 0
    if centers == "free":
        while i < n:
            cnt += 1
            j = i
            while j + 1 < n and fits(v[i], v[j + 1]):
                j += 1
            i = j + 1
        return cnt
    if centers != "points":
        raise ValueError("centers must be 'free' or 'points'")

    def in_ball(c: float, x: float) -> bool:
        return abs(x - c) <= eps if closed else abs(x - c) < eps

    while i < n:
        cnt += 1
        # Rightmost point usable as a center for v[i]; maximizes rightward reach.
        c = i
        for j in range(n - 1, i - 1, -1):
            if in_ball(v[j], v[i]):
                c = j
                break
        j = i
        while j + 1 < n and in_ball(v[c], v[j + 1]):
            j += 1
        i = j + 1
    return cnt


@dataclass(frozen=True)
class BoxCount:
    eps: float
    value: int
    exact: bool
    method: Method


def box_dimension_counts(alphabet_or_space, eps_ladder) -> list[BoxCount]:
    """Covering counts along a strictly decreasing eps ladder.

    Metric alphabets (or any sorted line values) go through the exact
    interval-covering oracle with free centers; finite metric spaces go
    through the generic open-ball cover count.
    """
    ladder = [float(e) for e in eps_ladder]
    if any(not a > b for a, b in zip(ladder, ladder[1:])):
        raise ValueError("eps ladder must be strictly decreasing")
    out: list[BoxCount] = []
    if isinstance(alphabet_or_space, FiniteMetricSpace):
        for eps in ladder:
            try:
                res = count(alphabet_or_space, eps, CountKind.N, Method.BRANCH_BOUND)
                out.append(BoxCount(eps, res.value, True, Method.BRANCH_BOUND))
            except NodeBudgetExceeded:
                res = count(alphabet_or_space, eps, CountKind.N, Method.GREEDY)
                out.append(BoxCount(eps, res.value, False, Method.GREEDY))
        return out
    values = getattr(alphabet_or_space, "values", alphabet_or_space)
    for eps in ladder:
        out.append(BoxCount(eps, interval_cover_count(values, eps), True, Method.INTERVAL))
    return out
