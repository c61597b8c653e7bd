import itertools
import math

import numpy as np
import pytest

from mdimlab.systems import (
    BlockParams,
    BudgetExceeded,
    Sample,
    enumerate_states,
    full_shift,
    make_block_system,
    make_grid_alphabet,
    make_reciprocal_alphabet,
    default_block_params,
    shift_word,
)


def test_grid_alphabet():
    assert make_grid_alphabet(2).values == (0.0, 1.0)
    assert make_grid_alphabet(3).values == (0.0, 0.5, 1.0)
    a1 = make_grid_alphabet(1)
    assert a1.values == (0.0,) and a1.diam_A == 0.0
    assert make_grid_alphabet(17).diam_A == 1.0


def test_reciprocal_alphabet():
    assert make_reciprocal_alphabet(3).values == (0.0, 1 / 3, 0.5, 1.0)
    assert make_reciprocal_alphabet(1).values == (0.0, 1.0)
    rec = make_reciprocal_alphabet(400)
    assert len(rec.values) == 401
    # Smallest gap is between the two largest reciprocals, 1/399 - 1/400.
    assert min(np.diff(rec.array)) == pytest.approx(1 / (399 * 400), rel=1e-12)


def test_default_block_params():
    p = default_block_params(1)
    assert p.b == (3,)
    assert p.a[1] == pytest.approx(6 / math.pi**2)
    assert p.eps[0] == pytest.approx(6 / math.pi**2 / 3)
    assert p.grids[0] == pytest.approx((0.0, p.eps[0], 2 * p.eps[0]))
    # The default cuts accumulate to 1.
    a_2000 = sum(6 / (math.pi * n) ** 2 for n in range(1, 2001))
    assert a_2000 == pytest.approx(1.0, abs=1e-3)


def test_explicit_block_params():
    p = BlockParams((0.0, 0.5), (2,))
    assert p.eps == (0.25,)
    assert p.grids[0] == (0.0, 0.25)


def test_block_conditions_enforced():
    BlockParams((0.0, 0.5, 0.8), (2, 3))  # decreasing gaps fine
    with pytest.raises(ValueError):
        BlockParams((0.0, 0.3, 0.7), (2, 3))  # increasing gaps
    with pytest.raises(ValueError):
        BlockParams((0.0, 0.5, 0.8), (3, 3))  # b not strictly increasing
    with pytest.raises(ValueError):
        BlockParams((0.1, 0.5), (2,))  # a_0 != 0


def test_block_grid_geometry():
    sysb = make_block_system(3)
    params = sysb.constraint.params
    for k, grid in enumerate(params.grids):
        gaps = np.diff(grid)
        assert np.allclose(gaps, params.eps[k], atol=1e-15)
    flat = [v for grid in params.grids for v in grid]
    assert len(set(flat)) == len(flat)  # pairwise disjoint grids
    cross = min(
        abs(x - y)
        for (i, gx), (j, gy) in itertools.combinations(enumerate(params.grids), 2)
        for x in gx
        for y in gy
    )
    assert cross > 0
    assert sysb.alphabet.values[-1] == 1.0  # fixed point symbol present
    assert sysb.analytic_block_entropies() == pytest.approx(
        [math.log(3), math.log(9), math.log(27)]
    )


def test_enumerate_full_shift():
    s = full_shift(make_grid_alphabet(2), 0)
    assert len(enumerate_states(s, 2)) == 4
    s1 = full_shift(make_grid_alphabet(3), 1)
    assert len(enumerate_states(s1, 2)) == 3**4


def test_enumerate_block_union():
    b2 = make_block_system(2, a_rule=(0, 0.5, 0.8), b_rule=(2, 3), W=0)
    words = enumerate_states(b2, 1)
    assert len(words) == 2 + 3 + 1  # per-block words plus the fixed point
    words2 = enumerate_states(b2, 2)
    assert len(words2) == 4 + 9 + 1
    # Every word is constant in block membership.
    groups = b2.block_index_sets()
    for w in words2:
        assert any(all(sym in g for sym in w) for g in groups)


def test_enumerate_budget():
    s = full_shift(make_grid_alphabet(4), 0)
    with pytest.raises(BudgetExceeded):
        enumerate_states(s, 12, max_states=1000)


def test_sample_deterministic():
    s = full_shift(make_grid_alphabet(3), 1)
    a = enumerate_states(s, 2, Sample(count=100, seed=7))
    b = enumerate_states(s, 2, Sample(count=100, seed=7))
    assert a == b
    c = enumerate_states(s, 2, Sample(count=100, seed=8))
    assert a != c
    assert all(len(w) == 4 for w in a)


def test_shift_invariance_of_admissibility():
    b2 = make_block_system(2, a_rule=(0, 0.5, 0.8), b_rule=(2, 3), W=1)
    words = enumerate_states(b2, 3)
    shorter = set(enumerate_states(b2, 2))
    for w in words:
        assert shift_word(w, 1, 2 + 2) in shorter  # shifted word stays admissible


def test_fixed_point_word_is_constant_one():
    sysb = make_block_system(1, W=0)
    words = enumerate_states(sysb, 2)
    fp_symbol = len(sysb.alphabet) - 1
    assert sysb.alphabet.values[fp_symbol] == 1.0
    assert tuple([fp_symbol] * 2) in words
