"""Symbolic systems: full shifts over finite alphabets and block-union subshifts.

A system couples a metric alphabet with a truncation window and an
admissibility constraint.  The block-union constraint models a disjoint
family of grids J_1..J_K (each J_k of cardinality b_k and spacing
eps_k = (a_k - a_{k-1}) / b_k) together with the fixed point at value 1:
admissible words are constant in block membership, or constantly 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .metric_core import FiniteMetricSpace, MetricAlphabet, TruncationSpec, bowen_lift

__all__ = [
    "FullShift",
    "BlockUnion",
    "BlockParams",
    "SymbolicSystem",
    "make_grid_alphabet",
    "make_reciprocal_alphabet",
    "make_block_system",
    "enumerate_states",
    "lift",
    "BudgetExceeded",
]


class BudgetExceeded(RuntimeError):
    """Raised when exhaustive enumeration would exceed the state budget."""


@dataclass(frozen=True)
class FullShift:
    kind: str = "full_shift"


@dataclass(frozen=True)
class BlockParams:
    """Parameter sequences of a block-union construction.

    a is the nondecreasing cut sequence with a_0 = 0 (length K+1); b the
    strictly increasing positive block cardinalities (length K).  Derived:
    eps_k = (a_k - a_{k-1}) / b_k and the grids
    J_k = {a_{k-1} + j * eps_k : 0 <= j < b_k}.
    """

    a: tuple[float, ...]
    b: tuple[int, ...]
    eps: tuple[float, ...] = field(init=False)
    grids: tuple[tuple[float, ...], ...] = field(init=False)

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(int(x) for x in self.b)
        if len(a) != len(b) + 1:
            raise ValueError("need len(a) == len(b) + 1 (a includes a_0)")
        if a[0] != 0.0:
            raise ValueError("a_0 must be 0")
        if any(not (x < y) for x, y in zip(a, a[1:])):
            raise ValueError("a must be strictly increasing")
        if a[-1] >= 1.0:
            raise ValueError("prefix of a must stay below the fixed-point value 1")
        gaps = [y - x for x, y in zip(a, a[1:])]
        if any(not (g1 > g2) for g1, g2 in zip(gaps, gaps[1:])):
            raise ValueError("gaps a_k - a_{k-1} must be strictly decreasing")
        if any(x <= 0 for x in b):
            raise ValueError("b entries must be positive")
        if any(not (x < y) for x, y in zip(b, b[1:])):
            raise ValueError("b must be strictly increasing")
        eps = tuple(g / bk for g, bk in zip(gaps, b))
        grids = tuple(
            tuple(a[k] + j * eps[k] for j in range(b[k])) for k in range(len(b))
        )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "grids", grids)

    @property
    def K(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class BlockUnion:
    params: BlockParams
    includes_fixed_point: bool = True
    kind: str = "block_union"


@dataclass(frozen=True)
class SymbolicSystem:
    """Alphabet + truncation window + admissibility constraint."""

    alphabet: MetricAlphabet
    trunc: TruncationSpec
    constraint: FullShift | BlockUnion

    def describe(self) -> str:
        if isinstance(self.constraint, FullShift):
            return f"full_shift(|A|={len(self.alphabet)},W={self.trunc.W})"
        return f"block_union(K={self.constraint.params.K},W={self.trunc.W})"

    def block_index_sets(self) -> list[list[int]]:
        """Alphabet index lists, one per block, plus [fixed point] last if present."""
        if not isinstance(self.constraint, BlockUnion):
            raise TypeError("block_index_sets requires a block-union system")
        lookup = {v: i for i, v in enumerate(self.alphabet.values)}
        out = [[lookup[v] for v in grid] for grid in self.constraint.params.grids]
        if self.constraint.includes_fixed_point:
            out.append([lookup[1.0]])
        return out

    def analytic_block_entropies(self) -> list[float]:
        """Per-block growth oracle: log b_k (the shift on block k has b_k free symbols)."""
        if not isinstance(self.constraint, BlockUnion):
            raise TypeError("analytic_block_entropies requires a block-union system")
        return [math.log(bk) for bk in self.constraint.params.b]


def full_shift(alphabet: MetricAlphabet, W: int) -> SymbolicSystem:
    return SymbolicSystem(alphabet, TruncationSpec(W, alphabet.diam_A), FullShift())


def make_grid_alphabet(m: int) -> MetricAlphabet:
    """Uniform grid {i/(m-1) : 0 <= i < m} in [0,1]; m = 1 gives {0}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return MetricAlphabet((0.0,))
    return MetricAlphabet(tuple(i / (m - 1) for i in range(m)))


def make_reciprocal_alphabet(N: int) -> MetricAlphabet:
    """{0} together with 1/n for 1 <= n <= N, sorted increasing."""
    if N < 1:
        raise ValueError("N must be >= 1")
    vals = sorted({0.0} | {1.0 / n for n in range(1, N + 1)})
    return MetricAlphabet(tuple(vals))


def default_block_params(K: int) -> BlockParams:
    """Default block parameters: a_k = sum_{n<=k} 6/(pi*n)^2 (so a_k -> 1), b_k = 3^k."""
    a = [0.0]
    for n in range(1, K + 1):
        a.append(a[-1] + 6.0 / (math.pi * n) ** 2)
    b = [3**k for k in range(1, K + 1)]
    return BlockParams(tuple(a), tuple(b))


def make_block_system(
    K: int,
    a_rule="default",
    b_rule="default",
    W: int = 0,
    includes_fixed_point: bool = True,
) -> SymbolicSystem:
    """Block-union subshift over grids J_1..J_K plus the fixed point 1^Z.

    a_rule / b_rule are either "default" (a_k = sum 6/(pi n)^2, b_k = 3^k)
    or explicit sequences; explicit a must include a_0 = 0.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if a_rule == "default" and b_rule == "default":
        params = default_block_params(K)
    else:
        default = default_block_params(K)
        a = default.a if a_rule == "default" else tuple(float(x) for x in a_rule)
        b = default.b if b_rule == "default" else tuple(int(x) for x in b_rule)
        params = BlockParams(a, b)
    values = sorted({v for grid in params.grids for v in grid})
    if includes_fixed_point:
        if values and values[-1] >= 1.0:
            raise ValueError("grids must stay below the fixed-point value 1")
        values.append(1.0)
    alphabet = MetricAlphabet(tuple(values))
    return SymbolicSystem(
        alphabet,
        TruncationSpec(W, alphabet.diam_A),
        BlockUnion(params=params, includes_fixed_point=includes_fixed_point),
    )


@dataclass(frozen=True)
class Sample:
    count: int
    seed: int


def _admissible_index_groups(sys: SymbolicSystem) -> list[list[int]]:
    """Symbol-index groups an admissible word must stay inside."""
    if isinstance(sys.constraint, FullShift):
        return [list(range(len(sys.alphabet)))]
    return sys.block_index_sets()


def enumerate_states(
    sys: SymbolicSystem,
    n: int,
    mode: str | Sample = "exhaustive",
    max_states: int = 2_000_000,
    nu: np.ndarray | None = None,
) -> list[tuple[int, ...]]:
    """Words over coordinates [-W, n-1+W] as alphabet-index tuples.

    Exhaustive mode lists every admissible word (full shift: all tuples;
    block union: tuples constant in block membership, plus the fixed-point
    word) and raises BudgetExceeded past max_states.  Sample mode draws
    words coordinate-wise i.i.d. from the distribution nu over alphabet
    indices (uniform when omitted), deterministic in the seed; sampling
    ignores admissibility constraints.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    L = n + 2 * sys.trunc.W
    if isinstance(mode, Sample):
        rng = np.random.default_rng(mode.seed)
        m = len(sys.alphabet)
        p = None if nu is None else np.asarray(nu, dtype=float)
        draws = rng.choice(m, size=(mode.count, L), p=p)
        return [tuple(int(s) for s in row) for row in draws]
    if mode != "exhaustive":
        raise ValueError(f"unknown enumeration mode: {mode!r}")
    groups = _admissible_index_groups(sys)
    total = sum(len(g) ** L for g in groups)
    if total > max_states:
        raise BudgetExceeded(
            f"{total} admissible words exceed max_states={max_states}; use Sample mode"
        )
    out: list[tuple[int, ...]] = []
    for g in groups:
        out.extend(itertools.product(g, repeat=L))
    return out


def lift(
    sys: SymbolicSystem, n: int, max_states: int = 2_000_000
) -> tuple[FiniteMetricSpace, list[tuple[int, ...]]]:
    """Exhaustive states plus their Bowen lift at horizon n."""
    states = enumerate_states(sys, n, "exhaustive", max_states=max_states)
    return bowen_lift(sys, states, n), states


def shift_word(word: tuple[int, ...], j: int, new_len: int) -> tuple[int, ...]:
    """Re-index a word by j steps and keep new_len symbols (pure slicing)."""
    if j < 0 or j + new_len > len(word):
        raise ValueError("shift out of range")
    return tuple(word[j : j + new_len])
