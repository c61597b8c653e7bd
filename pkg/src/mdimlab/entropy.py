"""Finite-horizon measure-theoretic entropy surrogates.

Four families, each with exact small-instance solvers:

* Katok numbers: the least number of eps-balls in the dynamical metric
  (open by default, centers at space points) whose union has measure
  strictly above 1 - delta; their log-growth over n.
* Shapira numbers: the same mass threshold over the n-fold join of a
  certified finite cover instead of metric balls.
* Brin-Katok local decay: -(1/n) log mu(B_n(x, eps)) per horizon, with
  measure-weighted averaging over sample points.
* Renyi coordinate-partition entropy: the Kolmogorov-Sinai entropy of
  the partition of [0,1] into m equal cells (last cell closed), in
  closed form for i.i.d. product measures and by finite-n plug-in
  (upward biased) otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .covering import greedy_net
from .measures import FiniteMeasure, ball_mass
from .metric_core import FiniteMetricSpace
from .systems import SymbolicSystem, lift
from . import solvers
from .solvers import NodeBudgetExceeded

__all__ = [
    "KatokNumber",
    "katok_number_space",
    "katok_number",
    "katok_growth",
    "katok_delta_table",
    "CoverSpec",
    "make_ball_cover",
    "certify_lebesgue",
    "shapira_number",
    "LocalDecay",
    "brin_katok_local",
    "brin_katok_average",
    "product_ball_bounds",
    "cell_index",
    "partition_pushforward",
    "renyi_partition_entropy",
    "renyi_plugin_entropy",
    "PluginEntropy",
]


# ---------------------------------------------------------------------------
# Katok numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KatokNumber:
    n: int
    eps: float
    delta: float
    ball_kind: str  # "open" | "closed"
    value: int
    exact: bool
    witness: tuple[int, ...]


def katok_number_space(
    space: FiniteMetricSpace,
    mu: FiniteMeasure,
    eps: float,
    delta: float,
    ball_kind: str = "open",
    method: str = "exact",
    n: int = 1,
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> KatokNumber:
    """Least number of eps-balls with union mass strictly above 1 - delta."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if ball_kind not in ("open", "closed"):
        raise ValueError("ball_kind must be 'open' or 'closed'")
    d = space.dmatrix
    balls = d <= eps if ball_kind == "closed" else d < eps
    threshold = 1.0 - delta
    if method == "greedy":
        witness = solvers.greedy_partial_cover(balls, mu.weights, threshold, strict=True)
        exact = False
    elif method == "exact":
        _, witness = solvers.min_partial_cover(
            balls, mu.weights, threshold, strict=True, node_budget=node_budget
        )
        exact = True
    else:
        raise ValueError("method must be 'exact' or 'greedy'")
    value = max(1, len(witness))
    if not witness:
        witness = [int(np.argmax(mu.weights))]
    return KatokNumber(n, eps, delta, ball_kind, value, exact, tuple(sorted(witness)))


def katok_number(
    sys: SymbolicSystem,
    mu_rule: Callable,
    n: int,
    eps: float,
    delta: float,
    ball_kind: str = "open",
    method: str = "exact",
    max_states: int = 2_000_000,
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> KatokNumber:
    space, states = lift(sys, n, max_states=max_states)
    mu = mu_rule(sys, n, space, states)
    return katok_number_space(
        space, mu, eps, delta, ball_kind, method, n=n, node_budget=node_budget
    )


def katok_growth(
    sys: SymbolicSystem,
    mu_rule: Callable,
    eps: float,
    delta: float,
    n_range,
    ball_kind: str = "open",
    method: str = "exact",
    max_states: int = 2_000_000,
):
    """Regression growth estimate of log Katok numbers over n."""
    from .estimators import growth_rate

    curve = []
    for n in n_range:
        kn = katok_number(sys, mu_rule, n, eps, delta, ball_kind, method, max_states)
        curve.append((int(n), kn.value))
    return growth_rate(curve)


def katok_delta_table(
    sys: SymbolicSystem, mu_rule: Callable, n: int, eps: float, deltas
) -> list[tuple[float, int]]:
    """Katok numbers over a delta ladder (the delta -> 0 limit is reported as a table)."""
    return [(float(d), katok_number(sys, mu_rule, n, eps, d).value) for d in deltas]


# ---------------------------------------------------------------------------
# Covers and Shapira numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverSpec:
    """A finite cover of a lift's point set with certified geometry.

    members are point-index frozensets; diam the largest member diameter;
    leb a certified Lebesgue lower bound (every open leb-ball around a
    point is contained in some member, verified exhaustively).
    """

    members: tuple[frozenset[int], ...]
    diam: float
    leb: float


def certify_lebesgue(space: FiniteMetricSpace, members, r: float) -> bool:
    """Exhaustively check that every open r-ball lies inside some member."""
    d = space.dmatrix
    member_masks = [np.zeros(len(space), dtype=bool) for _ in members]
    for mask, mem in zip(member_masks, members):
        mask[list(mem)] = True
    for x in range(len(space)):
        inside = d[x] < r
        if not any(bool(np.all(mask[inside])) for mask in member_masks):
            return False
    return True


def _member_diam(space: FiniteMetricSpace, mem) -> float:
    idx = sorted(mem)
    if len(idx) <= 1:
        return 0.0
    sub = space.dmatrix[np.ix_(idx, idx)]
    return float(sub.max())


def make_ball_cover(
    space: FiniteMetricSpace, eps: float, seed: int = 0, max_refinements: int = 4
) -> CoverSpec:
    """Open eps/2-balls centered on a greedy net, with certified Lebesgue >= eps/4.

    The net spacing starts at eps/4 and is refined if certification fails;
    member diameters stay strictly below eps by the triangle inequality.
    """
    net_scale = eps / 4
    for _ in range(max_refinements):
        net = greedy_net(space, net_scale, seed=seed)
        members = []
        d = space.dmatrix
        for c in net:
            members.append(frozenset(int(j) for j in np.flatnonzero(d[c] < eps / 2)))
        covered = set().union(*members) if members else set()
        if len(covered) == len(space) and certify_lebesgue(space, members, eps / 4):
            diam = max(_member_diam(space, mem) for mem in members)
            return CoverSpec(tuple(members), diam, eps / 4)
        net_scale /= 2
    raise RuntimeError("failed to certify a ball cover after refinements")


def join_cells(
    sys: SymbolicSystem,
    cover: CoverSpec,
    n: int,
    states,
    max_cells: int = 200_000,
) -> dict[tuple[int, ...], np.ndarray]:
    """Cells of the n-fold join of a base cover, as masks over the n-lift words.

    The base cover lives on the horizon-1 lift; an n-word belongs to cell
    (i_0..i_{n-1}) when its time-j restriction lies in member i_j for all j.
    """
    W = sys.trunc.W
    base_states = [tuple(w) for w in lift(sys, 1)[1]]
    base_index = {w: i for i, w in enumerate(base_states)}
    member_of_base: list[list[int]] = [[] for _ in base_states]
    for mid, mem in enumerate(cover.members):
        for b in mem:
            member_of_base[b].append(mid)
    cells: dict[tuple[int, ...], np.ndarray] = {}
    width = 2 * W + 1
    total = 0
    for widx, w in enumerate(states):
        options = []
        for j in range(n):
            b = base_index[tuple(w[j : j + width])]
            options.append(member_of_base[b])
        for combo in itertools.product(*options):
            if combo not in cells:
                cells[combo] = np.zeros(len(states), dtype=bool)
                total += 1
                if total > max_cells:
                    raise NodeBudgetExceeded("join cell budget exceeded")
            cells[combo][widx] = True
    return cells


def shapira_number(
    sys: SymbolicSystem,
    mu_rule: Callable,
    cover: CoverSpec,
    n: int,
    delta: float,
    method: str = "exact",
    max_states: int = 2_000_000,
    node_budget: int = solvers.DEFAULT_NODE_BUDGET,
) -> int:
    """Least number of join cells with union mass strictly above 1 - delta."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    space, states = lift(sys, n, max_states=max_states)
    mu = mu_rule(sys, n, space, states)
    cells = join_cells(sys, cover, n, states)
    keys = sorted(cells.keys())
    sets = np.stack([cells[k] for k in keys])
    if method == "greedy":
        witness = solvers.greedy_partial_cover(sets, mu.weights, 1.0 - delta, strict=True)
        return max(1, len(witness))
    value, _ = solvers.min_partial_cover(
        sets, mu.weights, 1.0 - delta, strict=True, node_budget=node_budget
    )
    return max(1, value)


# ---------------------------------------------------------------------------
# Brin-Katok local decay
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalDecay:
    x: tuple[int, ...]
    eps: float
    entries: tuple[tuple[int, float], ...]  # (n, -log mass / n)

    def slope(self) -> float:
        """Regression slope of -log mass against n (absorbs the mixture intercept)."""
        ns = np.asarray([n for n, _ in self.entries], dtype=float)
        ys = np.asarray([v * n for n, v in self.entries], dtype=float)
        if len(ns) == 1:
            return float(ys[0] / ns[0])
        return float(np.polyfit(ns, ys, 1)[0])


def brin_katok_local(
    sys: SymbolicSystem,
    mu_rule: Callable,
    x: tuple[int, ...],
    eps: float,
    n_range,
    max_states: int = 2_000_000,
) -> LocalDecay:
    """Per-horizon decay -(1/n) log mu(B_n(x, eps)) at the point x.

    x is a word long enough for the largest horizon; shorter horizons use
    its prefix.  Zero ball mass means x fell outside the effective
    support at this truncation and raises.
    """
    W = sys.trunc.W
    entries = []
    for n in sorted(n_range):
        L = n + 2 * W
        if len(x) < L:
            raise ValueError("x is too short for the requested horizons")
        space, states = lift(sys, n, max_states=max_states)
        mu = mu_rule(sys, n, space, states)
        key = tuple(x[:L])
        index = {tuple(w): i for i, w in enumerate(states)}
        if key not in index:
            raise ValueError("x is not admissible at this horizon")
        mass = ball_mass(mu, index[key], eps, closed=False)
        if mass <= 0:
            raise ValueError("zero ball mass: x lies outside the effective support")
        entries.append((int(n), -math.log(mass) / n))
    return LocalDecay(tuple(x), eps, tuple(entries))


def brin_katok_average(
    sys: SymbolicSystem,
    mu_rule: Callable,
    eps: float,
    n_range,
    sample: int | None = None,
    seed: int = 0,
    max_states: int = 2_000_000,
) -> tuple[float, list[tuple[tuple[int, ...], float, float]]]:
    """Measure-averaged local decay slope.

    Exhaustive mu-weighted averaging over the points of the largest
    horizon when sample is None; otherwise a mu-weighted sample of the
    given size, deterministic in the seed.  Returns the averaged slope
    and the per-point (word, weight, slope) table.
    """
    ns = sorted(int(n) for n in n_range)
    n_max = ns[-1]
    spaces = {}
    measures = {}
    indexes = {}
    for n in ns:
        space, states = lift(sys, n, max_states=max_states)
        spaces[n] = (space, states)
        measures[n] = mu_rule(sys, n, space, states)
        indexes[n] = {tuple(w): i for i, w in enumerate(states)}
    top_states = spaces[n_max][1]
    top_mu = measures[n_max]
    W = sys.trunc.W
    if sample is None:
        picks = [(tuple(w), float(top_mu.weights[i])) for i, w in enumerate(top_states)]
        picks = [(w, wt) for w, wt in picks if wt > 0]
    else:
        rng = np.random.default_rng(seed)
        idx = rng.choice(len(top_states), size=sample, p=top_mu.weights)
        picks = [(tuple(top_states[i]), 1.0 / sample) for i in idx]
    table = []
    for word, weight in picks:
        entries = []
        for n in ns:
            L = n + 2 * W
            i = indexes[n][tuple(word[:L])]
            mass = ball_mass(measures[n], i, eps, closed=False)
            if mass <= 0:
                raise ValueError("zero ball mass during averaging")
            entries.append((n, -math.log(mass) / n))
        table.append((word, weight, LocalDecay(word, eps, tuple(entries)).slope()))
    avg = sum(wt * s for _, wt, s in table)
    return float(avg), table


def product_ball_bounds(
    sys: SymbolicSystem, nu: np.ndarray, x: tuple[int, ...], n: int, eps: float
) -> tuple[float, float]:
    """Certified bracket for the product-measure mass of B_n(x, eps).

    Upper: the ball projects into per-coordinate open eps-intervals at
    coordinates 0..n-1.  Lower: confining every coordinate of the window
    [-W, n-1+W] within eps/4 of x forces the truncated dynamical distance
    under (sum of weights) * eps/4 < eps.
    """
    nu = np.asarray(nu, dtype=float)
    W = sys.trunc.W
    vals = sys.alphabet.array
    L = n + 2 * W
    if len(x) < L:
        raise ValueError("x too short")
    upper = 1.0
    for j in range(n):
        xv = vals[x[W + j]]
        upper *= float(nu[np.abs(vals - xv) < eps].sum())
    lower = 1.0
    for k in range(L):
        xv = vals[x[k]]
        lower *= float(nu[np.abs(vals - xv) < eps / 4].sum())
    return lower, upper


# ---------------------------------------------------------------------------
# Renyi coordinate-partition entropy
# ---------------------------------------------------------------------------


def cell_index(value: float, m: int) -> int:
    """Index of value in the partition of [0,1] into m cells [i/m, (i+1)/m).

    The last cell is closed so the endpoint 1 belongs to cell m-1.
    """
    if not 0.0 <= value <= 1.0:
        raise ValueError("partition defined on [0, 1]")
    return min(int(math.floor(value * m)), m - 1)


def partition_pushforward(alphabet, nu: np.ndarray, m: int) -> np.ndarray:
    """Distribution of the cell index of one coordinate under nu."""
    nu = np.asarray(nu, dtype=float)
    q = np.zeros(m)
    for idx, v in enumerate(alphabet.values):
        q[cell_index(v, m)] += nu[idx]
    return q


def _shannon(q: np.ndarray) -> float:
    q = np.asarray(q, dtype=float)
    pos = q[q > 0]
    return float(-(pos * np.log(pos)).sum())


@dataclass(frozen=True)
class PluginEntropy:
    value: float
    n: int
    biased: bool  # finite-n plug-in H(P^n)/n is an upper-bound estimate


def renyi_partition_entropy(measure_spec, m: int) -> float:
    """Coordinate-partition entropy h(P_m), in closed form.

    measure_spec is ("product", alphabet, nu) for an i.i.d. product
    measure (the cell process is i.i.d., so the rate is the Shannon
    entropy of the pushforward), or ("mixture", [(t_k, alphabet, nu_k)])
    whose rate is the mixture of the component rates (the partition
    entropy is affine in the measure).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    kind = measure_spec[0]
    if kind == "product":
        _, alphabet, nu = measure_spec
        return _shannon(partition_pushforward(alphabet, nu, m))
    if kind == "mixture":
        _, parts = measure_spec
        ts = [t for t, _, _ in parts]
        if abs(sum(ts) - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to 1")
        return float(
            sum(t * _shannon(partition_pushforward(alpha, nu, m)) for t, alpha, nu in parts)
        )
    raise ValueError("measure_spec kind must be 'product' or 'mixture'")


def renyi_plugin_entropy(
    sys: SymbolicSystem, mu: FiniteMeasure, states, n: int, m: int
) -> PluginEntropy:
    """Finite-n plug-in H(P_m^n)/n for an explicit measure on an n-lift.

    The plug-in is concave in the measure and decreases to the true rate,
    so the estimate is flagged as biased upward.
    """
    W = sys.trunc.W
    vals = sys.alphabet.array
    agg: dict[tuple[int, ...], float] = {}
    for widx, w in enumerate(states):
        sig = tuple(cell_index(float(vals[w[W + j]]), m) for j in range(n))
        agg[sig] = agg.get(sig, 0.0) + float(mu.weights[widx])
    return PluginEntropy(_shannon(np.asarray(list(agg.values()))) / n, n, True)
