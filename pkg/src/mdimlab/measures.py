"""Finitely supported probability measures over a finite metric space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metric_core import FiniteMetricSpace
from .systems import SymbolicSystem, enumerate_states

__all__ = [
    "FiniteMeasure",
    "ComponentDecomposition",
    "product_measure",
    "product_weights",
    "convex_combine",
    "dominates",
    "ball_mass",
]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FiniteMeasure:
    """Probability weights over the point indices of one FiniteMetricSpace."""

    space: FiniteMetricSpace
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.space),):
            raise ValueError("weight vector length must match the point count")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > _NORM_TOL:
            raise ValueError(f"weights sum to {w.sum()}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights > 0)

    @staticmethod
    def uniform(space: FiniteMetricSpace) -> "FiniteMeasure":
        P = len(space)
        return FiniteMeasure(space, np.full(P, 1.0 / P))

    @staticmethod
    def dirac(space: FiniteMetricSpace, index: int) -> "FiniteMeasure":
        w = np.zeros(len(space))
        w[index] = 1.0
        return FiniteMeasure(space, w)


def product_weights(states, nu: np.ndarray) -> np.ndarray:
    """Per-word weights: product of nu over every coordinate of each word."""
    nu = np.asarray(nu, dtype=float)
    mat = np.asarray(states, dtype=np.int64)
    return np.prod(nu[mat], axis=1)


def product_measure(
    sys: SymbolicSystem,
    nu: np.ndarray,
    n: int,
    space: FiniteMetricSpace | None = None,
    states=None,
    max_states: int = 2_000_000,
) -> FiniteMeasure:
    """I.i.d. product measure truncated to the words of an exhaustive lift.

    nu is a distribution over alphabet indices.  The word weights are the
    products of nu over all coordinates in [-W, n-1+W]; they must sum to 1
    over the admissible words (for block systems this requires nu to be
    supported inside a single block).
    """
    from .metric_core import bowen_lift

    nu = np.asarray(nu, dtype=float)
    if len(nu) != len(sys.alphabet):
        raise ValueError("nu must be indexed by the alphabet")
    if abs(float(nu.sum()) - 1.0) > _NORM_TOL:
        raise ValueError("nu must sum to 1")
    if states is None:
        states = enumerate_states(sys, n, "exhaustive", max_states=max_states)
    if space is None:
        space = bowen_lift(sys, states, n)
    w = product_weights(states, nu)
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(
            "product weights sum to "
            f"{total}; nu must be supported on a single admissible symbol group"
        )
    return FiniteMeasure(space, w / total)


def convex_combine(parts: list[tuple[float, FiniteMeasure]]) -> FiniteMeasure:
    """Pointwise convex combination sum t_i * mu_i of measures on one space."""
    if not parts:
        raise ValueError("need at least one part")
    ts = np.asarray([t for t, _ in parts], dtype=float)
    if np.any(ts <= 0):
        raise ValueError("mixture weights must be positive")
    if abs(float(ts.sum()) - 1.0) > _NORM_TOL:
        raise ValueError("mixture weights must sum to 1")
    space = parts[0][1].space
    if any(mu.space is not space for _, mu in parts):
        raise ValueError("all parts must live on the same space")
    w = np.zeros(len(space))
    for t, mu in parts:
        w = w + t * mu.weights
    return FiniteMeasure(space, w)


def dominates(mu: FiniteMeasure, nu: FiniteMeasure, t: float) -> bool:
    """True iff mu(i) >= t * nu(i) at every atom (finite-support domination)."""
    if mu.space is not nu.space:
        raise ValueError("measures live on different spaces")
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    return bool(np.all(mu.weights >= t * nu.weights))


def ball_mass(
    mu: FiniteMeasure, center: int, eps: float, closed: bool = False
) -> float:
    """Mass of the open (< eps) or closed (<= eps) ball around a point."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    row = mu.space.dmatrix[center]
    inside = row <= eps if closed else row < eps
    return float(mu.weights[inside].sum())


@dataclass(frozen=True)
class ComponentDecomposition:
    """Explicit mixture bookkeeping: fixed-point mass t_0 plus block components.

    Components are built with known weights, never inferred; mixture()
    materializes the combined measure.
    """

    t0: float
    fixed_point_index: int | None
    components: tuple[tuple[float, FiniteMeasure], ...]

    def __post_init__(self):
        total = self.t0 + sum(t for t, _ in self.components)
        if abs(total - 1.0) > _NORM_TOL:
            raise ValueError(f"component masses sum to {total}, not 1")
        if self.t0 > 0 and self.fixed_point_index is None:
            raise ValueError("positive t0 requires a fixed-point index")

    def mixture(self) -> FiniteMeasure:
        space = self.components[0][1].space if self.components else None
        if space is None:
            raise ValueError("decomposition has no components")
        w = np.zeros(len(space))
        for t, mu in self.components:
            if mu.space is not space:
                raise ValueError("components live on different spaces")
            w = w + t * mu.weights
        if self.t0 > 0:
            w[self.fixed_point_index] += self.t0
        return FiniteMeasure(space, w)
