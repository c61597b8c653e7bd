"""Exact branch-and-bound solvers used by the counting modules.

Small-instance oracles: maximum clique (separated sets), minimum set
cover (ball covers) and minimum partial set cover (mass-covering
numbers).  All solvers are deterministic: candidate orderings are fixed
and ties break toward the lowest index.  Node expansions are counted
against a budget; exceeding it raises NodeBudgetExceeded so callers can
downgrade to a greedy bound.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "NodeBudgetExceeded",
    "max_clique",
    "greedy_clique",
    "min_set_cover",
    "greedy_set_cover",
    "min_partial_cover",
    "greedy_partial_cover",
]

DEFAULT_NODE_BUDGET = 5_000_000


class NodeBudgetExceeded(RuntimeError):
    """Solver exceeded its node-expansion budget."""


def _mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _bool_to_mask(row: np.ndarray) -> int:
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


# ---------------------------------------------------------------------------
# Maximum clique (maximum eps-separated subset on the > eps adjacency graph)
# ---------------------------------------------------------------------------


def greedy_clique(adj: np.ndarray) -> list[int]:
    """Maximal clique by ascending-index scan; a valid lower-bound witness."""
    chosen: list[int] = []
    for v in range(adj.shape[0]):
        if all(adj[v, u] for u in chosen):
            chosen.append(v)
    return chosen


def max_clique(adj: np.ndarray, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, list[int]]:
    """Exact maximum clique via branch and bound with greedy coloring bounds.

    adj is a boolean symmetric matrix with a False diagonal.
    """
    n = adj.shape[0]
    if n == 0:
        return 0, []
    neigh = [_bool_to_mask(adj[v]) for v in range(n)]
    seed = greedy_clique(adj)
    best = len(seed)
    best_set = list(seed)
    nodes = 0

    def color_sort(P: int) -> tuple[list[int], list[int]]:
        # Greedy coloring: vertices grouped by color class, ascending color.
        order: list[int] = []
        bounds: list[int] = []
        uncolored = P
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append(v)
                bounds.append(color)
                avail &= ~(neigh[v] | (1 << v))
                uncolored &= ~(1 << v)
        return order, bounds

    def expand(R: list[int], P: int):
        nonlocal best, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded("max_clique node budget exceeded")
        order, bounds = color_sort(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= best:
                return
            v = order[i]
            R.append(v)
            newP = P & neigh[v]
            if newP:
                expand(R, newP)
            elif len(R) > best:
                best = len(R)
                best_set = list(R)
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << n) - 1)
    return best, sorted(best_set)


# ---------------------------------------------------------------------------
# Minimum set cover
# ---------------------------------------------------------------------------


def greedy_set_cover(masks: list[int], universe: int) -> list[int]:
    """Classic greedy cover; ties break toward the lowest set index."""
    uncovered = universe
    chosen: list[int] = []
    while uncovered:
        gain_best, pick = 0, -1
        for s, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > gain_best:
                gain_best, pick = gain, s
        if pick < 0:
            raise ValueError("sets do not cover the universe")
        chosen.append(pick)
        uncovered &= ~masks[pick]
    return chosen


def min_set_cover(
    masks: list[int], universe: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[int, list[int]]:
    """Exact minimum set cover over bitmask sets."""
    if universe == 0:
        return 0, []
    # Restrict to the universe, deduplicate, and drop dominated (subset) sets.
    keep: list[int] = []
    for s, raw in enumerate(masks):
        m = raw & universe
        if m == 0:
            continue
        if any(m | (masks[t] & universe) == masks[t] & universe for t in keep):
            continue  # m is contained in an earlier kept set
        keep = [t for t in keep if (masks[t] & universe) | m != m]
        keep.append(s)
    sub = [masks[s] & universe for s in keep]
    if not sub:
        raise ValueError("sets do not cover the universe")

    covers_elem: dict[int, list[int]] = {e: [] for e in _mask_to_indices(universe)}
    for pos, m in enumerate(sub):
        for e in _mask_to_indices(m):
            covers_elem[e].append(pos)
    if any(not opts for opts in covers_elem.values()):
        raise ValueError("sets do not cover the universe")

    greedy = greedy_set_cover(sub, universe)
    best = len(greedy)
    best_set = [keep[p] for p in greedy]
    max_size = max(m.bit_count() for m in sub)
    if best == math.ceil(universe.bit_count() / max_size):
        return best, sorted(best_set)
    nodes = 0

    def matching_bound(uncovered: int) -> int:
        # Elements whose live covering sets are pairwise disjoint each force
        # a distinct set; much stronger than the size ratio on ball covers.
        blocked: set[int] = set()
        cnt = 0
        mm = uncovered
        while mm:
            e = (mm & -mm).bit_length() - 1
            opts = [p for p in covers_elem[e] if sub[p] & uncovered]
            if not any(p in blocked for p in opts):
                cnt += 1
                blocked.update(opts)
            mm &= mm - 1
        return cnt

    def solve(uncovered: int, chosen: list[int]):
        nonlocal best, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded("min_set_cover node budget exceeded")
        if uncovered == 0:
            if len(chosen) < best:
                best = len(chosen)
                best_set = [keep[p] for p in chosen]
            return
        lb = max(math.ceil(uncovered.bit_count() / max_size), matching_bound(uncovered))
        if len(chosen) + lb >= best:
            return
        # Branch on the uncovered element with the fewest live covering sets.
        options: list[int] | None = None
        for e in _mask_to_indices(uncovered):
            opts = [p for p in covers_elem[e] if sub[p] & uncovered]
            if options is None or len(opts) < len(options):
                options = opts
        assert options
        options = sorted(options, key=lambda p: (-(sub[p] & uncovered).bit_count(), p))
        for p in options:
            chosen.append(p)
            solve(uncovered & ~sub[p], chosen)
            chosen.pop()

    solve(universe, [])
    return best, sorted(best_set)


# ---------------------------------------------------------------------------
# Minimum partial set cover (cover mass above a threshold)
# ---------------------------------------------------------------------------


def _feasible(mass: float, threshold: float, strict: bool) -> bool:
    return mass > threshold if strict else mass >= threshold


def greedy_partial_cover(
    sets: np.ndarray, masses: np.ndarray, threshold: float, strict: bool
) -> list[int]:
    """Greedy max-coverage until the threshold is passed; upper-bound witness."""
    if _feasible(0.0, threshold, strict):
        return []
    covered = np.zeros(len(masses), dtype=bool)
    chosen: list[int] = []
    while True:
        gains = (sets & ~covered) @ masses
        if chosen:
            gains[chosen] = -1.0
        pick = int(np.argmax(gains))  # argmax returns the lowest index on ties
        if gains[pick] <= 0:
            raise ValueError("threshold unreachable: sets exhausted")
        chosen.append(pick)
        covered |= sets[pick]
        if _feasible(float(masses[covered].sum()), threshold, strict):
            return chosen


def min_partial_cover(
    sets: np.ndarray,
    masses: np.ndarray,
    threshold: float,
    strict: bool = True,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[int, list[int]]:
    """Minimum number of sets whose union mass exceeds (or reaches) threshold.

    sets is a boolean matrix (one row per candidate set over the atoms);
    masses the per-atom nonnegative masses.  strict selects "> threshold"
    versus ">= threshold".
    """
    sets = np.asarray(sets, dtype=bool)
    masses = np.asarray(masses, dtype=float)
    if _feasible(0.0, threshold, strict):
        return 0, []
    # Deduplicate rows and drop empty ones; keep the lowest original index.
    orig: list[int] = []
    seen: set[bytes] = set()
    for s in range(sets.shape[0]):
        key = sets[s].tobytes()
        if key in seen or not sets[s].any():
            continue
        seen.add(key)
        orig.append(s)
    work = sets[orig]
    m = work.shape[0]
    if m == 0:
        raise ValueError("threshold unreachable: no nonempty sets")
    set_mass = work @ masses

    if not np.any(work.sum(axis=0) > 1):
        # Pairwise disjoint sets: taking them in decreasing mass order is optimal.
        order = sorted(range(m), key=lambda s: (-set_mass[s], s))
        total = 0.0
        chosen: list[int] = []
        for s in order:
            chosen.append(s)
            total += float(set_mass[s])
            if _feasible(total, threshold, strict):
                return len(chosen), sorted(orig[s] for s in chosen)
        raise ValueError("threshold unreachable")

    greedy = greedy_partial_cover(work, masses, threshold, strict)
    ub = len(greedy)
    prefix = np.cumsum(np.sort(set_mass)[::-1])
    ok = prefix > threshold if strict else prefix >= threshold
    if not np.any(ok):
        raise ValueError("threshold unreachable")
    lb = 1 + int(np.argmax(ok))
    if ub == lb:
        return ub, sorted(orig[s] for s in greedy)

    budget_left = node_budget
    for k in range(lb, ub):
        witness, used = _partial_cover_dfs(
            work, masses, set_mass, threshold, strict, k, budget_left
        )
        budget_left -= used
        if budget_left <= 0:
            raise NodeBudgetExceeded("min_partial_cover node budget exceeded")
        if witness is not None:
            return k, sorted(orig[s] for s in witness)
    return ub, sorted(orig[s] for s in greedy)


def _partial_cover_dfs(work, masses, set_mass, threshold, strict, k, node_budget):
    """Search for k sets passing the threshold; lexicographic set order."""
    m = work.shape[0]
    nodes = 0
    # tails[i] = cumulative sums of the sorted static masses of sets i..m-1,
    # prefixed with 0; tails[i][r] bounds what r more sets from i on can add.
    tails = []
    for i in range(m + 1):
        rest = np.sort(set_mass[i:])[::-1]
        tails.append(np.concatenate([[0.0], np.cumsum(rest)]))

    def dfs(start: int, depth: int, covered: np.ndarray, mass: float):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded("partial cover DFS node budget exceeded")
        if _feasible(mass, threshold, strict):
            return []
        if depth == k:
            return None
        remaining = k - depth
        for s in range(start, m - remaining + 1):
            tail = tails[s]
            bound = mass + float(tail[min(remaining, len(tail) - 1)])
            if not _feasible(bound, threshold, strict):
                return None  # later starts only shrink the available tail
            gain = float(masses[work[s] & ~covered].sum())
            if gain <= 0.0:
                continue
            res = dfs(s + 1, depth + 1, covered | work[s], mass + gain)
            if res is not None:
                return [s] + res
        return None

    got = dfs(0, 0, np.zeros(len(masses), dtype=bool), 0.0)
    return got, nodes
