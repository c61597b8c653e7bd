"""Exact Wasserstein and Levy-Prokhorov distances on finite supports.

Wasserstein distances are solved as transportation linear programs on the
support-to-support cost matrix.  The Levy-Prokhorov distance is computed
through its coupling characterization: LP(mu, nu) is the infimum of eps
with min_coupling_excess(mu, nu, eps) <= eps, where the excess is the
least coupling mass sitting on pairs with d(x, y) strictly greater than
eps.  On a finite space the excess is a right-continuous nonincreasing
step function jumping only at pairwise distances, so the infimum equals

    min over thresholds c in {0} + {pairwise distances} of max(c, excess(c))

and is attained.  A subset-enumeration oracle evaluates the defining
two-sided condition directly on small supports; it uses closed
eps-thickenings, the reading under which max-flow duality makes the two
routes agree threshold by threshold (the infimum itself is the same
under either thickening convention).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix

from .measures import FiniteMeasure

__all__ = [
    "Coupling",
    "wasserstein",
    "optimal_coupling",
    "min_coupling_excess",
    "levy_prokhorov",
    "levy_prokhorov_subsets",
]

_FEAS_TOL = 1e-10


@dataclass(frozen=True)
class Coupling:
    """Joint weights over support(mu) x support(nu) with the given marginals."""

    row_indices: np.ndarray  # point indices of mu's support
    col_indices: np.ndarray  # point indices of nu's support
    matrix: np.ndarray

    def __post_init__(self):
        if np.any(self.matrix < -_FEAS_TOL):
            raise ValueError("negative coupling mass")

    def check_marginals(self, mu_w: np.ndarray, nu_w: np.ndarray, tol: float = _FEAS_TOL):
        if np.max(np.abs(self.matrix.sum(axis=1) - mu_w)) > tol:
            raise ValueError("row sums do not match mu")
        if np.max(np.abs(self.matrix.sum(axis=0) - nu_w)) > tol:
            raise ValueError("column sums do not match nu")


def _support_problem(mu: FiniteMeasure, nu: FiniteMeasure):
    if mu.space is not nu.space:
        raise ValueError("measures live on different spaces")
    ri = mu.support
    ci = nu.support
    d = mu.space.dmatrix[np.ix_(ri, ci)]
    return ri, ci, mu.weights[ri], nu.weights[ci], d


def _transport_lp(cost: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    """Solve min <cost, x> over couplings of marginals a, b."""
    s, t = cost.shape
    if s == 1:
        return float(cost[0] @ b), b.reshape(1, -1).copy()
    if t == 1:
        return float(cost[:, 0] @ a), a.reshape(-1, 1).copy()
    rows = []
    cols = []
    for i in range(s):
        rows.extend([i] * t)
        cols.extend(range(i * t, (i + 1) * t))
    for j in range(t):
        rows.extend([s + j] * s)
        cols.extend(range(j, s * t, t))
    data = np.ones(2 * s * t)
    A = coo_matrix((data, (rows, cols)), shape=(s + t, s * t))
    rhs = np.concatenate([a, b])
    res = linprog(cost.ravel(), A_eq=A, b_eq=rhs, bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun), res.x.reshape(s, t)


def _canonical_order(mu: FiniteMeasure, nu: FiniteMeasure) -> bool:
    """Deterministic argument ordering so symmetric distances are exactly symmetric."""
    a, b = mu.weights, nu.weights
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return True


def optimal_coupling(mu: FiniteMeasure, nu: FiniteMeasure, p: float = 1.0) -> tuple[float, Coupling]:
    """Optimal transport cost for d^p and an achieving coupling."""
    ri, ci, a, b, d = _support_problem(mu, nu)
    cost, plan = _transport_lp(d**p, a, b)
    coupling = Coupling(ri, ci, plan)
    coupling.check_marginals(a, b)
    return max(cost, 0.0), coupling


def wasserstein(mu: FiniteMeasure, nu: FiniteMeasure, p: float = 1.0) -> float:
    """Exact W_p via the transportation problem on the bipartite support graph."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if not _canonical_order(mu, nu):
        mu, nu = nu, mu
    cost, _ = optimal_coupling(mu, nu, p)
    return cost ** (1.0 / p)


def min_coupling_excess(mu: FiniteMeasure, nu: FiniteMeasure, eps: float) -> float:
    """Least coupling mass on pairs with d(x, y) > eps (strict).

    Computed as 1 - maxflow over the bipartite graph of allowed pairs
    (d <= eps), via Edmonds-Karp augmentation on the support atoms.
    """
    if not _canonical_order(mu, nu):
        mu, nu = nu, mu
    ri, ci, a, b, d = _support_problem(mu, nu)
    allowed = d <= eps
    return max(0.0, 1.0 - _bipartite_maxflow(a, b, allowed))


def _bipartite_maxflow(a: np.ndarray, b: np.ndarray, allowed: np.ndarray) -> float:
    """Max mass routable from sources (capacities a) to sinks (b) along allowed edges."""
    s, t = allowed.shape
    # Node ids: 0 = source, 1..s = left atoms, s+1..s+t = right atoms, s+t+1 = sink.
    n = s + t + 2
    src, sink = 0, n - 1
    cap: dict[tuple[int, int], float] = {}
    adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(u, v, c):
        if (u, v) not in cap:
            adj[u].append(v)
            adj[v].append(u)
            cap[(u, v)] = 0.0
            cap[(v, u)] = 0.0
        cap[(u, v)] += c

    for i in range(s):
        add_edge(src, 1 + i, float(a[i]))
    for j in range(t):
        add_edge(1 + s + j, sink, float(b[j]))
    big = float(a.sum()) + 1.0
    for i in range(s):
        for j in range(t):
            if allowed[i, j]:
                add_edge(1 + i, 1 + s + j, big)

    flow = 0.0
    max_rounds = 10 * (s * t + s + t) + 50  # float capacities: guard the loop
    for _ in range(max_rounds):
        # BFS for a shortest augmenting path.
        parent = [-1] * n
        parent[src] = src
        queue = [src]
        while queue and parent[sink] < 0:
            u = queue.pop(0)
            for v in adj[u]:
                if parent[v] < 0 and cap[(u, v)] > 1e-15:
                    parent[v] = u
                    queue.append(v)
        if parent[sink] < 0:
            return flow
        bottleneck = float("inf")
        v = sink
        while v != src:
            u = parent[v]
            bottleneck = min(bottleneck, cap[(u, v)])
            v = u
        v = sink
        while v != src:
            u = parent[v]
            cap[(u, v)] -= bottleneck
            cap[(v, u)] += bottleneck
            v = u
        flow += bottleneck
    raise RuntimeError("max-flow failed to terminate; degenerate capacities")


def _lp_from_excess(thresholds: np.ndarray, excess) -> float:
    """min over thresholds c of max(c, excess(c)), with a monotone binary search."""
    lo, hi = 0, len(thresholds) - 1
    cache: dict[int, float] = {}

    def f(i: int) -> float:
        if i not in cache:
            cache[i] = excess(float(thresholds[i]))
        return cache[i]

    # Predicate f(i) <= thresholds[i] is monotone in i (f nonincreasing).
    if f(hi) > thresholds[hi]:
        return max(float(thresholds[hi]), f(hi))
    while lo < hi:
        mid = (lo + hi) // 2
        if f(mid) <= thresholds[mid]:
            hi = mid
        else:
            lo = mid + 1
    cands = [max(float(thresholds[lo]), f(lo))]
    if lo > 0:
        cands.append(max(float(thresholds[lo - 1]), f(lo - 1)))
    return min(cands)


def levy_prokhorov(mu: FiniteMeasure, nu: FiniteMeasure) -> float:
    """LP distance as the attained infimum of {eps : coupling excess(eps) <= eps}."""
    if not _canonical_order(mu, nu):
        mu, nu = nu, mu
    ri, ci, a, b, d = _support_problem(mu, nu)
    thresholds = np.unique(np.concatenate([[0.0], d.ravel()]))

    def excess(c: float) -> float:
        return max(0.0, 1.0 - _bipartite_maxflow(a, b, d <= c))

    return _lp_from_excess(thresholds, excess)


def levy_prokhorov_subsets(mu: FiniteMeasure, nu: FiniteMeasure, max_support: int = 16) -> float:
    """Subset-enumeration oracle for the LP distance on small supports.

    Evaluates the worst two-sided deficiency max(nu(E) - mu(E_eps),
    mu(E) - nu(E_eps)) over every subset E of the supports, with closed
    eps-thickenings E_eps, then scans the threshold grid exactly like the
    coupling route.
    """
    if not _canonical_order(mu, nu):
        mu, nu = nu, mu
    ri, ci, a, b, d = _support_problem(mu, nu)
    if len(ri) > max_support or len(ci) > max_support:
        raise ValueError("subset oracle restricted to small supports")
    thresholds = np.unique(np.concatenate([[0.0], d.ravel()]))

    def worst_deficiency(c: float) -> float:
        worst = 0.0
        # nu(E) vs mu(closed c-thickening of E), E over nu's support atoms.
        for r in range(1, len(ci) + 1):
            for combo in itertools.combinations(range(len(ci)), r):
                nu_mass = float(b[list(combo)].sum())
                near = (d[:, list(combo)] <= c).any(axis=1)
                worst = max(worst, nu_mass - float(a[near].sum()))
        for r in range(1, len(ri) + 1):
            for combo in itertools.combinations(range(len(ri)), r):
                mu_mass = float(a[list(combo)].sum())
                near = (d[list(combo), :] <= c).any(axis=0)
                worst = max(worst, mu_mass - float(b[near].sum()))
        return worst

    return _lp_from_excess(thresholds, worst_deficiency)
