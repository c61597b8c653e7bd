import math

import numpy as np
import pytest

from mdimlab.covering import CountKind, count
from mdimlab.estimators import growth_rate
from mdimlab.measures import FiniteMeasure, convex_combine
from mdimlab.metric_core import FiniteMetricSpace
from mdimlab.quantization import (
    dynamical_quantization_curve,
    product_measure_rule,
    quantization_number,
)
from mdimlab.systems import full_shift, lift, make_grid_alphabet

from oracles import brute_partial_cover, brute_quant_wp


def line(vals):
    return FiniteMetricSpace.from_line(vals)


def test_wp_examples():
    sp = line([0.0, 1.0])
    uni = FiniteMeasure.uniform(sp)
    assert quantization_number(uni, 1.5, "wp", p=1).value == 1  # eps beyond diam
    res = quantization_number(uni, 0.4, "wp", p=1)
    assert res.value == 2 and res.exact
    assert res.objective <= 0.4


def test_lp_examples():
    sp3 = line([0.0, 0.5, 1.0])
    u3 = FiniteMeasure.uniform(sp3)
    assert quantization_number(u3, 0.3, "lp").value == 3
    assert quantization_number(FiniteMeasure.dirac(sp3, 2), 0.25, "lp").value == 1
    assert quantization_number(u3, 1.0, "lp").value == 1  # clamp at eps >= 1


def test_lp_witness_mass():
    rng = np.random.default_rng(6)
    sp = FiniteMetricSpace.euclidean(rng.random((10, 2)))
    mu = FiniteMeasure(sp, rng.dirichlet(np.ones(10)))
    for eps in (0.15, 0.35):
        res = quantization_number(mu, eps, "lp")
        covered = (sp.dmatrix[:, list(res.centers)] <= eps).any(axis=1)
        assert float(mu.weights[covered].sum()) >= 1 - eps - 1e-12


def test_exact_matches_brute_force():
    rng = np.random.default_rng(8)
    for _ in range(10):
        P = int(rng.integers(3, 8))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        mu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        eps = float(rng.uniform(0.05, 0.6))
        assert quantization_number(mu, eps, "wp", p=1).value == brute_quant_wp(
            sp.dmatrix, mu.weights, eps, 1.0
        )
        got_lp = quantization_number(mu, eps, "lp").value
        want_lp = max(1, brute_partial_cover(sp.dmatrix <= eps, mu.weights, 1 - eps, False))
        assert got_lp == want_lp


def test_greedy_is_upper_bound():
    rng = np.random.default_rng(10)
    for _ in range(8):
        P = int(rng.integers(4, 12))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        mu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        eps = float(rng.uniform(0.1, 0.5))
        for kind in ("wp", "lp"):
            g = quantization_number(mu, eps, kind, method="greedy")
            e = quantization_number(mu, eps, kind, method="exact")
            assert not g.exact and e.exact
            assert g.value >= e.value


def test_monotone_in_eps_and_diam_clamp():
    rng = np.random.default_rng(12)
    sp = FiniteMetricSpace.euclidean(rng.random((9, 2)))
    mu = FiniteMeasure(sp, rng.dirichlet(np.ones(9)))
    for kind in ("wp", "lp"):
        vals = [quantization_number(mu, e, kind).value for e in (0.6, 0.3, 0.15, 0.08)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert quantization_number(mu, sp.diam + 0.01, "wp").value == 1


def test_bounded_by_covering_numbers():
    # Quantization never needs more centers than a full ball cover.
    rng = np.random.default_rng(14)
    s2 = full_shift(make_grid_alphabet(2), 0)
    space, states = lift(s2, 3)
    mu = FiniteMeasure(space, rng.dirichlet(np.ones(len(space))))
    for eps in (0.7, 0.4, 0.2):
        c_closed = count(space, eps, CountKind.C).value
        n_open = count(space, eps, CountKind.N).value
        assert quantization_number(mu, eps, "lp").value <= c_closed
        for p in (1.0, 2.0):
            q = quantization_number(mu, eps, "wp", p=p).value
            assert q <= c_closed <= n_open


def test_dynamical_curve_bernoulli_lp():
    s2 = full_shift(make_grid_alphabet(2), 0)
    rule = product_measure_rule(np.array([0.5, 0.5]))
    curve = dynamical_quantization_curve(s2, rule, 0.3, "lp", range(1, 4))
    assert curve.entries == ((1, 2), (2, 3), (3, 6))
    g = growth_rate(list(curve.entries))
    assert abs(g.slope - math.log(2)) < 0.2


def test_dynamical_curve_trivial_cases():
    s2 = full_shift(make_grid_alphabet(2), 0)
    rule = product_measure_rule(np.array([0.5, 0.5]))
    big = dynamical_quantization_curve(s2, rule, 5.0, "lp", range(1, 4))
    assert [q for _, q in big.entries] == [1, 1, 1]
    delta_rule = product_measure_rule(np.array([1.0, 0.0]))
    dirac = dynamical_quantization_curve(s2, delta_rule, 0.2, "wp", range(1, 4), p=1)
    assert [q for _, q in dirac.entries] == [1, 1, 1]


def test_domination_monotonicity_static():
    rng = np.random.default_rng(16)
    for _ in range(25):
        P = int(rng.integers(3, 9))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        nu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        rho = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        t = float(rng.uniform(0.1, 0.9))
        mu = convex_combine([(t, nu), (1 - t, rho)])
        eps = float(rng.uniform(0.05, 0.8))
        q_mu = quantization_number(mu, t * eps, "wp", p=1).value
        q_nu = quantization_number(nu, eps, "wp", p=1).value
        assert q_mu >= q_nu


def test_wp_witness_certifies_objective():
    rng = np.random.default_rng(18)
    for _ in range(8):
        P = int(rng.integers(3, 9))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        mu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        eps = float(rng.uniform(0.08, 0.5))
        for p in (1.0, 2.0):
            res = quantization_number(mu, eps, "wp", p=p)
            assert len(res.centers) == res.value
            cost = float(mu.weights @ (sp.dmatrix[:, list(res.centers)].min(axis=1) ** p))
            assert cost <= eps**p + 1e-12
            assert res.objective == pytest.approx(cost, abs=1e-12)
