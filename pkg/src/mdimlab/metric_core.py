"""Finite metric spaces and dynamical (Bowen) lifts of symbolic words.

Words over a metric alphabet are stored as integer index tuples of length
``n + 2*W``: tuple position ``p`` holds the symbol at absolute coordinate
``p - W``, so a word for time horizon ``n`` covers the coordinate range
``[-W, n-1+W]``.  The base metric on sequences is the weighted sum
``sum_k 2^{-|k|} * |x_k - y_k|`` truncated to the window ``|k| <= W``; the
dynamical metric ``d_n`` takes the maximum of the truncated metric along
the first ``n`` shifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "MetricAlphabet",
    "TruncationSpec",
    "Provenance",
    "FiniteMetricSpace",
    "truncation_window",
    "pairwise_distance",
    "bowen_lift",
]


def _is_dyadic(x: float, max_denom_pow: int = 40) -> bool:
    """True if x equals k / 2**m exactly for some integer k and m <= max_denom_pow."""
    if not math.isfinite(x):
        return False
    scaled = x * (2.0**max_denom_pow)
    return scaled == int(scaled)


@dataclass(frozen=True)
class MetricAlphabet:
    """A finite subset of [0, 1] with the absolute-difference metric.

    values must be strictly increasing; diam_A is max - min and dyadic
    flags whether all values are dyadic rationals (so that sums of
    weighted differences are exact in binary floating point).
    """

    values: tuple[float, ...]
    diam_A: float = field(init=False)
    dyadic: bool = field(init=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) == 0:
            raise ValueError("alphabet must be nonempty")
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise ValueError("alphabet values must be strictly increasing")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "diam_A", vals[-1] - vals[0])
        object.__setattr__(self, "dyadic", all(_is_dyadic(v) for v in vals))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class TruncationSpec:
    """Window half-width W and the exact discarded tail of the weight series.

    The weights 2^{-|k|} for |k| > W sum to 2^{1-W}, so the truncation
    error of the sequence metric is at most tail_bound = 2^{1-W} * diam_A.
    """

    W: int
    diam_A: float

    def __post_init__(self):
        if self.W < 0:
            raise ValueError("W must be >= 0")

    @property
    def tail_bound(self) -> float:
        return 2.0 ** (1 - self.W) * self.diam_A

    @property
    def weights(self) -> np.ndarray:
        """Window weights 2^{-|k|} for k = -W..W."""
        k = np.arange(-self.W, self.W + 1)
        return 2.0 ** (-np.abs(k).astype(float))


def truncation_window(tol: float, diam_A: float) -> int:
    """Smallest W >= 0 with 2^(1-W) * diam_A <= tol."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if diam_A < 0:
        raise ValueError("diam_A must be >= 0")
    W = 0
    while 2.0 ** (1 - W) * diam_A > tol:
        W += 1
    return W


@dataclass(frozen=True)
class Provenance:
    """Origin of a space: raw construction or a Bowen lift of a base system."""

    kind: str  # "raw" | "bowen_lift"
    base_id: str | None = None
    n: int | None = None

    @staticmethod
    def raw() -> "Provenance":
        return Provenance(kind="raw")

    @staticmethod
    def lift(base_id: str, n: int) -> "Provenance":
        return Provenance(kind="bowen_lift", base_id=base_id, n=n)


class FiniteMetricSpace:
    """An indexed point set with a dense exact distance matrix.

    All values are immutable after construction; the distance oracle is a
    pure lookup, safe for concurrent reads.
    """

    def __init__(
        self,
        points: Sequence,
        dmatrix: np.ndarray,
        provenance: Provenance | None = None,
        dyadic: bool = False,
        validate: bool = True,
    ):
        dmatrix = np.asarray(dmatrix, dtype=float)
        P = len(points)
        if dmatrix.shape != (P, P):
            raise ValueError("distance matrix shape does not match point count")
        self.points = list(points)
        self._d = dmatrix
        self._d.setflags(write=False)
        self.provenance = provenance or Provenance.raw()
        self.dyadic = dyadic
        self.diam = float(dmatrix.max()) if P > 0 else 0.0
        if validate:
            self._validate()

    def _validate(self, triples: int = 64, tol: float = 1e-12) -> None:
        d = self._d
        if np.any(np.abs(np.diag(d)) > 0):
            raise ValueError("nonzero diagonal in distance matrix")
        if np.any(d < 0):
            raise ValueError("negative distance")
        if not np.array_equal(d, d.T):
            raise ValueError("asymmetric distance matrix")
        P = len(self.points)
        if P >= 3:
            # Spot-check the triangle inequality on deterministic pseudo-random triples.
            rng = np.random.default_rng(12345)
            idx = rng.integers(0, P, size=(triples, 3))
            i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
            if np.any(d[i, k] > d[i, j] + d[j, k] + tol):
                raise ValueError("triangle inequality violated")

    def __len__(self) -> int:
        return len(self.points)

    def dist(self, i: int, j: int) -> float:
        return float(self._d[i, j])

    @property
    def dmatrix(self) -> np.ndarray:
        return self._d

    @staticmethod
    def from_points(
        points: Sequence, metric: Callable[[object, object], float], dyadic: bool = False
    ) -> "FiniteMetricSpace":
        P = len(points)
        d = np.zeros((P, P))
        for i in range(P):
            for j in range(i + 1, P):
                d[i, j] = d[j, i] = metric(points[i], points[j])
        return FiniteMetricSpace(points, d, Provenance.raw(), dyadic=dyadic)

    @staticmethod
    def from_line(values: Sequence[float], dyadic: bool | None = None) -> "FiniteMetricSpace":
        """Points on the real line with the absolute-difference metric."""
        v = np.asarray(values, dtype=float)
        d = np.abs(v[:, None] - v[None, :])
        if dyadic is None:
            dyadic = all(_is_dyadic(float(x)) for x in v)
        return FiniteMetricSpace([float(x) for x in v], d, Provenance.raw(), dyadic=dyadic)

    @staticmethod
    def euclidean(coords: np.ndarray) -> "FiniteMetricSpace":
        """Points in R^k with the Euclidean metric (rows are points)."""
        coords = np.asarray(coords, dtype=float)
        diff = coords[:, None, :] - coords[None, :, :]
        d = np.sqrt((diff**2).sum(axis=2))
        d = (d + d.T) / 2.0
        np.fill_diagonal(d, 0.0)
        return FiniteMetricSpace([tuple(row) for row in coords], d, Provenance.raw())


def _check_word_pair(sys, x: Sequence[int], y: Sequence[int]) -> None:
    W = sys.trunc.W
    if len(x) != len(y):
        raise ValueError("words have mismatched index ranges")
    if len(x) < 2 * W + 1:
        raise ValueError(f"word too short for window half-width W={W}")


def pairwise_distance(sys, x: Sequence[int], y: Sequence[int]) -> float:
    """Truncated sequence metric between two words, evaluated at time 0.

    Returns sum over |k| <= W of 2^{-|k|} * |x_k - y_k| where tuple
    position W holds coordinate 0.
    """
    _check_word_pair(sys, x, y)
    W = sys.trunc.W
    vals = sys.alphabet.array
    xi = vals[np.asarray(x[: 2 * W + 1], dtype=int)]
    yi = vals[np.asarray(y[: 2 * W + 1], dtype=int)]
    return float(np.dot(sys.trunc.weights, np.abs(xi - yi)))


def bowen_lift(sys, states: Sequence[Sequence[int]], n: int, validate: bool = False) -> FiniteMetricSpace:
    """Finite metric space of words under the dynamical metric d_n.

    d_n(x, y) = max over 0 <= j < n of the truncated metric applied to the
    j-shifted words; each word must cover coordinates [-W, n-1+W], i.e.
    have length n + 2W.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    W = sys.trunc.W
    L = n + 2 * W
    mat = np.asarray([tuple(w) for w in states], dtype=np.int64)
    if mat.ndim != 2 or mat.shape[1] != L:
        raise ValueError(f"every word must have length n + 2W = {L}")
    vals = sys.alphabet.array[mat]  # (P, L) float values
    weights = sys.trunc.weights
    P = mat.shape[0]
    dn = np.zeros((P, P))
    win = 2 * W + 1
    for j in range(n):
        dj = np.zeros((P, P))
        for k in range(win):
            col = vals[:, j + k]
            dj += weights[k] * np.abs(col[:, None] - col[None, :])
        np.maximum(dn, dj, out=dn)
    return FiniteMetricSpace(
        [tuple(int(s) for s in row) for row in mat],
        dn,
        Provenance.lift(base_id=sys.describe(), n=n),
        dyadic=sys.alphabet.dyadic,
        validate=validate,
    )
