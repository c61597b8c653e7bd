import numpy as np
import pytest
from hypothesis import given, strategies as st

from mdimlab.metric_core import (
    FiniteMetricSpace,
    MetricAlphabet,
    TruncationSpec,
    bowen_lift,
    pairwise_distance,
    truncation_window,
)
from mdimlab.systems import FullShift, SymbolicSystem, make_grid_alphabet


def two_shift(W):
    alpha = make_grid_alphabet(2)
    return SymbolicSystem(alpha, TruncationSpec(W, alpha.diam_A), FullShift())


def test_truncation_window_examples():
    assert truncation_window(1 / 8, 1.0) == 4
    assert truncation_window(2.0, 1.0) == 0
    assert truncation_window(0.5, 0.0) == 0


@given(st.floats(min_value=1e-6, max_value=10.0), st.floats(min_value=0.0, max_value=2.0))
def test_truncation_window_minimal(tol, diam):
    W = truncation_window(tol, diam)
    assert 2.0 ** (1 - W) * diam <= tol
    if W > 0:
        assert 2.0 ** (1 - (W - 1)) * diam > tol


def test_tail_bound_is_discarded_weight_mass():
    spec = TruncationSpec(3, 1.0)
    # sum over |k| > 3 of 2^{-|k|} = 2 * 2^{-3}
    tail = 2 * sum(2.0**-k for k in range(4, 60))
    assert spec.tail_bound == pytest.approx(tail, abs=1e-12)


def test_pairwise_distance_examples():
    sysA = two_shift(1)
    assert pairwise_distance(sysA, (0, 0, 0), (0, 1, 0)) == 1.0
    assert pairwise_distance(sysA, (0, 0, 0), (0, 0, 1)) == 0.5
    assert pairwise_distance(sysA, (1, 0, 1), (1, 0, 1)) == 0.0


def test_pairwise_distance_range_mismatch():
    sysA = two_shift(1)
    with pytest.raises(ValueError):
        pairwise_distance(sysA, (0, 0, 0), (0, 0))
    with pytest.raises(ValueError):
        pairwise_distance(sysA, (0,), (0,))


def test_bowen_lift_examples():
    sysA = two_shift(1)
    x, y = (0, 0, 0, 0), (0, 0, 1, 0)
    d2 = bowen_lift(sysA, [x, y], 2)
    assert d2.dist(0, 1) == 1.0  # the differing symbol sits at the center of time 1
    d1 = bowen_lift(sysA, [x[:3], y[:3]], 1)
    assert d1.dist(0, 1) == 0.5
    assert d1.dist(0, 1) == pairwise_distance(sysA, x[:3], y[:3])


def test_bowen_lift_monotone_in_n():
    rng = np.random.default_rng(5)
    sysA = two_shift(2)
    n_hi = 4
    words = [tuple(rng.integers(0, 2, size=n_hi + 4)) for _ in range(12)]
    lift_hi = bowen_lift(sysA, words, n_hi)
    lift_lo = bowen_lift(sysA, [w[: 3 + 4] for w in words], 3)
    assert np.all(lift_hi.dmatrix >= lift_lo.dmatrix - 1e-15)


def test_bowen_lift_is_metric_on_random_triples():
    rng = np.random.default_rng(7)
    sysA = two_shift(1)
    words = [tuple(rng.integers(0, 2, size=5)) for _ in range(10)]
    space = bowen_lift(sysA, words, 3, validate=True)  # validation spot-checks triangles
    d = space.dmatrix
    for _ in range(200):
        i, j, k = rng.integers(0, len(words), size=3)
        assert d[i, k] <= d[i, j] + d[j, k] + 1e-12


def test_truncation_error_bound():
    # Distances at window W differ from a much wider window by at most the tail bound.
    rng = np.random.default_rng(11)
    alpha = make_grid_alphabet(4)
    for W in (0, 1, 3):
        sys_w = SymbolicSystem(alpha, TruncationSpec(W, alpha.diam_A), FullShift())
        sys_wide = SymbolicSystem(alpha, TruncationSpec(W + 8, alpha.diam_A), FullShift())
        bound = sys_w.trunc.tail_bound
        for _ in range(25):
            wide_len = 1 + 2 * (W + 8)
            x = tuple(rng.integers(0, 4, size=wide_len))
            y = tuple(rng.integers(0, 4, size=wide_len))
            off = 8  # align centers: narrow window is the middle slice
            narrow = pairwise_distance(sys_w, x[off : off + 2 * W + 1], y[off : off + 2 * W + 1])
            wide = pairwise_distance(sys_wide, x, y)
            assert abs(wide - narrow) <= bound + 1e-15


def test_alphabet_validation_and_dyadic_flag():
    with pytest.raises(ValueError):
        MetricAlphabet((0.5, 0.5))
    with pytest.raises(ValueError):
        MetricAlphabet(())
    assert MetricAlphabet((0.0, 0.5, 1.0)).dyadic
    assert not MetricAlphabet((0.0, 1 / 3, 1.0)).dyadic


def test_space_rejects_broken_metrics():
    bad = np.array([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError):
        FiniteMetricSpace([0, 1], bad)
    asym_ok = np.array([[0.0, 1.0], [1.0, 0.0]])
    sp = FiniteMetricSpace([0, 1], asym_ok)
    assert sp.diam == 1.0
    # triangle violation: d(0,2)=5 > 1 + 1
    tri = np.array([[0, 1, 5.0], [1, 0, 1.0], [5.0, 1, 0]])
    with pytest.raises(ValueError):
        FiniteMetricSpace([0, 1, 2], tri)


def test_provenance_and_immutability():
    sysA = two_shift(0)
    space = bowen_lift(sysA, [(0, 0), (1, 1)], 2)
    assert space.provenance.kind == "bowen_lift"
    assert space.provenance.n == 2
    with pytest.raises(ValueError):
        space.dmatrix[0, 1] = 7.0


def test_bowen_lift_rejects_unequal_ranges():
    sysA = two_shift(1)
    with pytest.raises(ValueError):
        bowen_lift(sysA, [(0, 0, 0, 0), (0, 0, 0)], 2)
    with pytest.raises(ValueError):
        bowen_lift(sysA, [(0, 0, 0), (0, 0, 0)], 2)  # length 3 != n + 2W = 4
    with pytest.raises(ValueError):
        bowen_lift(sysA, [(0, 0, 0, 0)], 0)
