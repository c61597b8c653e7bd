import itertools
import math

import numpy as np
import pytest

from mdimlab.measures import FiniteMeasure
from mdimlab.metric_core import FiniteMetricSpace
from mdimlab.transport import (
    levy_prokhorov,
    levy_prokhorov_subsets,
    min_coupling_excess,
    optimal_coupling,
    wasserstein,
)

from oracles import brute_levy_prokhorov


def line(vals):
    return FiniteMetricSpace.from_line(vals)


@pytest.fixture
def pair01():
    sp = line([0.0, 1.0])
    return sp, FiniteMeasure.uniform(sp), FiniteMeasure.dirac(sp, 0), FiniteMeasure.dirac(sp, 1)


def test_wasserstein_examples(pair01):
    sp, uni, d0, d1 = pair01
    for p in (1.0, 2.0, 3.5):
        assert wasserstein(d0, d1, p) == pytest.approx(1.0, abs=1e-12)
    assert wasserstein(uni, d0, 1) == pytest.approx(0.5, abs=1e-12)
    assert wasserstein(uni, d0, 2) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert wasserstein(uni, d0, 2) >= wasserstein(uni, d0, 1)


def test_optimal_coupling_marginals():
    rng = np.random.default_rng(4)
    sp = FiniteMetricSpace.euclidean(rng.random((7, 2)))
    mu = FiniteMeasure(sp, rng.dirichlet(np.ones(7)))
    nu = FiniteMeasure(sp, rng.dirichlet(np.ones(7)))
    cost, coupling = optimal_coupling(mu, nu, 1.0)
    assert cost >= 0
    assert np.allclose(coupling.matrix.sum(axis=1), mu.weights[coupling.row_indices], atol=1e-10)
    assert np.allclose(coupling.matrix.sum(axis=0), nu.weights[coupling.col_indices], atol=1e-10)


def test_min_coupling_excess_examples(pair01):
    sp, uni, d0, d1 = pair01
    assert min_coupling_excess(uni, uni, 0.01) == 0.0
    assert min_coupling_excess(d0, d1, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert min_coupling_excess(uni, d0, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_levy_prokhorov_examples(pair01):
    sp, uni, d0, d1 = pair01
    assert levy_prokhorov(uni, uni) == 0.0
    assert levy_prokhorov(d0, d1) == pytest.approx(1.0, abs=1e-12)  # min(d, 1) at d = 1
    sp3 = line([0.0, 0.3])
    a, b = FiniteMeasure.dirac(sp3, 0), FiniteMeasure.dirac(sp3, 1)
    assert levy_prokhorov(a, b) == pytest.approx(0.3, abs=1e-12)
    assert levy_prokhorov(uni, d0) == pytest.approx(0.5, abs=1e-12)
    sp_far = line([0.0, 2.5])
    far = levy_prokhorov(FiniteMeasure.dirac(sp_far, 0), FiniteMeasure.dirac(sp_far, 1))
    assert far == pytest.approx(1.0, abs=1e-12)  # LP never exceeds 1


def test_subset_oracle_matches_examples(pair01):
    sp, uni, d0, d1 = pair01
    assert levy_prokhorov_subsets(uni, d0) == pytest.approx(0.5, abs=1e-12)
    assert levy_prokhorov_subsets(d0, d1) == pytest.approx(1.0, abs=1e-12)


def test_strassen_equality_random():
    rng = np.random.default_rng(9)
    for _ in range(60):
        P = int(rng.integers(2, 7))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        mu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        nu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        assert abs(levy_prokhorov(mu, nu) - levy_prokhorov_subsets(mu, nu)) <= 1e-9


def test_lp_against_independent_grid_oracle():
    rng = np.random.default_rng(13)
    for _ in range(6):
        P = int(rng.integers(2, 5))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        w1 = rng.dirichlet(np.ones(P))
        w2 = rng.dirichlet(np.ones(P))
        mu, nu = FiniteMeasure(sp, w1), FiniteMeasure(sp, w2)
        got = levy_prokhorov(mu, nu)
        want = brute_levy_prokhorov(sp.dmatrix, w1, w2, grid_extra=[got])
        assert got == pytest.approx(want, abs=1e-9)


def test_metric_axioms():
    rng = np.random.default_rng(19)
    for _ in range(15):
        P = int(rng.integers(2, 7))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        ms = [FiniteMeasure(sp, rng.dirichlet(np.ones(P))) for _ in range(3)]
        for p in (1.0, 2.0):
            for a, b in itertools.combinations(range(3), 2):
                # Symmetry is exact by canonical argument ordering.
                assert wasserstein(ms[a], ms[b], p) == wasserstein(ms[b], ms[a], p)
            d01 = wasserstein(ms[0], ms[1], p)
            d12 = wasserstein(ms[1], ms[2], p)
            d02 = wasserstein(ms[0], ms[2], p)
            assert d02 <= d01 + d12 + 1e-9
            assert wasserstein(ms[0], ms[0], p) <= 1e-10
        assert levy_prokhorov(ms[0], ms[1]) == levy_prokhorov(ms[1], ms[0])
        lp01 = levy_prokhorov(ms[0], ms[1])
        lp12 = levy_prokhorov(ms[1], ms[2])
        lp02 = levy_prokhorov(ms[0], ms[2])
        assert lp02 <= lp01 + lp12 + 1e-9


def test_comparison_inequalities_random():
    rng = np.random.default_rng(21)
    for _ in range(40):
        P = int(rng.integers(2, 8))
        sp = FiniteMetricSpace.euclidean(rng.random((P, 2)))
        mu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        nu = FiniteMeasure(sp, rng.dirichlet(np.ones(P)))
        q = float(rng.uniform(1.0, 2.5))
        p = q + float(rng.uniform(0.0, 2.0))
        wq, wp = wasserstein(mu, nu, q), wasserstein(mu, nu, p)
        lp = levy_prokhorov(mu, nu)
        diam = sp.diam
        assert wq <= wp + 1e-9
        assert wp <= diam ** (1 - q / p) * wq ** (q / p) + 1e-9
        assert lp ** (1 + 1 / p) <= wp + 1e-9
        assert wp <= (1 + diam**p) ** (1 / p) * lp ** (1 / p) + 1e-9


def test_mismatched_spaces_rejected():
    spa, spb = line([0.0, 1.0]), line([0.0, 0.5])
    with pytest.raises(ValueError):
        wasserstein(FiniteMeasure.uniform(spa), FiniteMeasure.uniform(spb), 1)
