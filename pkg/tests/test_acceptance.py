"""Acceptance gate: every criterion at its stated scale and tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL
line per criterion.
"""

import json
import math
import time

import numpy as np
import pytest

from mdimlab.covering import CountKind, box_dimension_counts, count
from mdimlab.entropy import katok_growth, renyi_partition_entropy
from mdimlab.estimators import (
    dimension_report,
    full_shift_count_bounds,
    geometric_curve,
    growth_rate,
)
from mdimlab.quantization import dynamical_quantization_curve, product_measure_rule
from mdimlab.suites import run_suite
from mdimlab.systems import full_shift, lift, make_grid_alphabet, make_reciprocal_alphabet
from mdimlab.cli import main


def report(criterion: str, passed: bool, detail: str):
    line = f"{criterion}: {'PASS' if passed else 'FAIL'} - {detail}"
    print(line, flush=True)
    assert passed, line


def test_a1_chain_closedopen_suites():
    start = time.perf_counter()
    chain = run_suite("CHAIN", seed=1, trials=200)
    closed = run_suite("CLOSEDOPEN", seed=1, trials=200)
    elapsed = time.perf_counter() - start
    ok = chain.passed and closed.passed and elapsed < 60.0
    report(
        "A1",
        ok,
        f"CHAIN failures={len(chain.failures)}, CLOSEDOPEN failures={len(closed.failures)}, "
        f"runtime={elapsed:.1f}s (< 60s)",
    )


def test_a2_subadditivity_suite():
    rep = run_suite("SUBADD", seed=1, trials=60)
    report("A2", rep.passed, f"failures={len(rep.failures)} on full-shift lifts (W=0, n+m<=4)")


def test_a3_full_shift_dimension_bracket():
    start = time.perf_counter()
    g16 = make_grid_alphabet(16)
    ladder = [2.0**-2, 2.0**-3, 2.0**-4]
    lo_rates, up_rates = [], []
    for eps in ladder:
        sep, cov = full_shift_count_bounds(g16, 0, eps)
        lo_rates.append(growth_rate(geometric_curve(sep, range(1, 5))))
        up_rates.append(growth_rate(geometric_curve(cov, range(1, 5))))
    rep_lo = dimension_report(lo_rates, ladder)
    rep_up = dimension_report(up_rates, ladder)
    bracket = (rep_lo.ratio_lower, rep_up.ratio_upper)
    # Cross-validate both analytic bounds against exact brute-force counts.
    crossed = True
    for m in (2, 3, 4):
        sysm = full_shift(make_grid_alphabet(m), 0)
        for eps in ladder:
            sep, cov = full_shift_count_bounds(sysm.alphabet, 0, eps)
            for n in (1, 2, 3):
                space, _ = lift(sysm, n)
                s_val = count(space, eps, CountKind.S).value
                n_val = count(space, eps, CountKind.N).value
                crossed = crossed and sep**n <= s_val and n_val <= cov**n
    elapsed = time.perf_counter() - start
    contains = bracket[0] <= 1.3 and bracket[1] >= 0.75
    ok = crossed and contains and elapsed < 300.0
    report(
        "A3",
        ok,
        f"bracket=({bracket[0]:.3f}, {bracket[1]:.3f}) meets [0.75, 1.3], "
        f"cross-validated={crossed}, runtime={elapsed:.1f}s (< 5min)",
    )


def test_a4_reciprocal_alphabet_ratio():
    rec = make_reciprocal_alphabet(400)
    ladder = [2.0**-k for k in range(4, 10)]
    boxes = box_dimension_counts(rec, ladder)
    exact = all(b.exact for b in boxes)
    rep = dimension_report([math.log(b.value) for b in boxes], ladder)
    ok = exact and 0.35 <= rep.ratio_lower and rep.ratio_upper <= 0.65
    report(
        "A4",
        ok,
        f"ratios in [{rep.ratio_lower:.3f}, {rep.ratio_upper:.3f}] within [0.35, 0.65], "
        f"counts={[b.value for b in boxes]}",
    )


def test_a5_strassen_suite():
    rep = run_suite("STRASSEN", seed=1, trials=500)
    report("A5", rep.passed, f"failures={len(rep.failures)} on 500 pairs, tol 1e-9")


def test_a6_metric_relations_suite():
    rep = run_suite("METRICREL", seed=1, trials=500)
    report("A6", rep.passed, f"failures={len(rep.failures)} on 500 pairs, slack >= -1e-9")


def test_a7_markov_dominate_lpkatok():
    reps = {name: run_suite(name, seed=1, trials=300)
            for name in ("MARKOV", "DOMINATE", "LPKATOK")}
    ok = all(r.passed for r in reps.values())
    report(
        "A7",
        ok,
        ", ".join(f"{k} failures={len(r.failures)}" for k, r in reps.items())
        + " (300 trials each; DOMINATE doubles as the scaled-domination check, C=1)",
    )


def test_a8_katok_shapira_suite():
    rep = run_suite("KS", seed=1, trials=25)
    report("A8", rep.passed, f"failures={len(rep.failures)} with certified covers")


def test_a9_bernoulli_growth_slopes():
    start = time.perf_counter()
    s2 = full_shift(make_grid_alphabet(2), 2)
    rule = product_measure_rule(np.array([0.5, 0.5]))
    curve = dynamical_quantization_curve(s2, rule, 0.25, "lp", range(2, 7))
    q_slope = growth_rate(list(curve.entries)).slope
    k_slope = katok_growth(s2, rule, 0.25, 0.1, range(2, 7)).slope
    elapsed = time.perf_counter() - start
    ok = 0.55 <= q_slope <= 0.73 and 0.55 <= k_slope <= 0.73 and elapsed < 300.0
    report(
        "A9",
        ok,
        f"LP-quantization slope={q_slope:.4f}, mass-cover slope={k_slope:.4f} "
        f"in [0.55, 0.73] (target log 2 = {math.log(2):.4f}), runtime={elapsed:.1f}s",
    )


def test_a10_block_suite():
    rep = run_suite("BLOCK", seed=1, trials=3)
    report(
        "A10",
        rep.passed,
        f"failures={len(rep.failures)}: decay ratios <= 0.2, fixed-delta cover "
        "ratios <= 0.25, decay bound at each n, first-block slope within 10% of log 3",
    )


def test_a11_renyi_closed_forms():
    a2 = make_grid_alphabet(2)
    bern = renyi_partition_entropy(("product", a2, np.array([0.5, 0.5])), 2)
    ok = abs(bern - math.log(2)) <= 1e-12
    grids_ok = True
    for m in (2, 3, 4, 6, 9):
        am = make_grid_alphabet(m)
        val = renyi_partition_entropy(("product", am, np.full(m, 1.0 / m)), m)
        grids_ok = grids_ok and abs(val - math.log(m)) <= 1e-12
    parts = [(0.3, a2, np.array([0.5, 0.5])), (0.7, make_grid_alphabet(3), np.array([0.2, 0.5, 0.3]))]
    mix = renyi_partition_entropy(("mixture", parts), 3)
    affine = 0.3 * renyi_partition_entropy(("product", a2, parts[0][2]), 3) + 0.7 * (
        renyi_partition_entropy(("product", parts[1][1], parts[1][2]), 3)
    )
    mix_ok = mix == affine
    report(
        "A11",
        ok and grids_ok and mix_ok,
        f"Bernoulli(1/2) m=2 -> {bern:.12f} (log 2), uniform grids -> log m to 1e-12, "
        f"mixture affinity exact={mix_ok}",
    )


def test_a12_determinism_and_exit_codes(tmp_path):
    cfg = {
        "system": {"kind": "grid", "m": 3, "W": 0},
        "quantity": {"kind": "count", "count_kind": "N"},
        "eps_ladder": [0.6, 0.3, 0.15],
        "n_range": [1, 3],
        "plot": True,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    codes = []
    for tag in ("x", "y"):
        codes.append(main(["experiment", str(cfg_path), "--out", str(tmp_path / tag)]))
        codes.append(main(["verify", "--suite", "SUBADD,DOMINATE", "--seed", "3",
                           "--trials", "10", "--out", str(tmp_path / f"v{tag}")]))
    same_exp = all(
        (tmp_path / "x" / f).read_bytes() == (tmp_path / "y" / f).read_bytes()
        for f in ("counts.csv", "summary.json", "plot.svg")
    )
    same_ver = all(
        (tmp_path / "vx" / f"suite_{s}.json").read_bytes()
        == (tmp_path / "vy" / f"suite_{s}.json").read_bytes()
        for s in ("SUBADD", "DOMINATE")
    )
    bad_cfg = tmp_path / "bad.json"
    bad_cfg.write_text("{broken")
    exit_contract = (
        all(c == 0 for c in codes)
        and main(["experiment", str(bad_cfg), "--out", str(tmp_path / "z")]) == 2
        and main(["verify", "--suite", "UNKNOWN", "--out", str(tmp_path / "z")]) == 2
    )
    report(
        "A12",
        same_exp and same_ver and exit_contract,
        f"experiment byte-identical={same_exp}, verify byte-identical={same_ver}, "
        f"exit codes honored={exit_contract}",
    )
