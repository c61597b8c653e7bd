import json

import numpy as np
import pytest

from mdimlab.suites import DEFAULT_TRIALS, SUITE_NAMES, SuiteReport, replay, run_suite


def test_all_suites_pass_smoke():
    small = {
        "CHAIN": 12, "CLOSEDOPEN": 12, "SUBADD": 12, "KS": 4, "BKBOUND": 5,
        "BKCONVEX": 8, "MARKOV": 25, "DOMINATE": 25, "LPKATOK": 25,
        "METRICREL": 30, "STRASSEN": 30, "BLOCK": 3,
    }
    for name in SUITE_NAMES:
        rep = run_suite(name, seed=2, trials=small[name])
        assert rep.passed, (name, rep.failures[:1])
        assert not rep.skipped


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("NOPE")


def test_zero_trials_vacuous_pass():
    rep = run_suite("CHAIN", seed=0, trials=0)
    assert rep.passed
    assert rep.warnings and "vacuous" in rep.warnings[0]


def test_reports_reproducible():
    a = run_suite("STRASSEN", seed=9, trials=12)
    b = run_suite("STRASSEN", seed=9, trials=12)
    assert json.dumps(a.to_json_dict(), sort_keys=True) == json.dumps(
        b.to_json_dict(), sort_keys=True
    )
    c = run_suite("STRASSEN", seed=10, trials=12)
    assert c.passed  # different seed still passes; cases differ
    # runtime is excluded from the serialized report
    assert "runtime" not in json.dumps(a.to_json_dict())


def test_budget_skip_not_fail():
    rep = run_suite("SUBADD", seed=1, trials=10, budget={"max_states": 2})
    assert rep.skipped
    assert not rep.failures
    assert not rep.passed
    assert any("budget" in w for w in rep.warnings)


def test_replay_reproduces_synthetic_failure():
    # A hand-built record violating the chain on a tie instance: {0, 1} at
    # eps exactly 1 has S = 1 (strict separation) but R = 2 (strict spanning).
    record = {
        "assertion": "chain:R<=S",
        "case": {
            "suite": "CHAIN",
            "points": [[0.0, 0.0], [1.0, 0.0]],
            "eps_list": [1.0],
        },
        "detail": {"eps": 1.0, "lhs": 2, "rhs": 1},
    }
    reproduced, violations = replay(record)
    assert reproduced
    assert any(v["assertion"] == "chain:R<=S" for v in violations)


def test_replay_non_reproducing_record():
    record = {
        "assertion": "chain:R<=S",
        "case": {
            "suite": "CHAIN",
            "points": [[0.0, 0.0], [1.0, 0.0]],
            "eps_list": [0.5],  # no tie here; the chain holds
        },
        "detail": {},
    }
    reproduced, violations = replay(record)
    assert not reproduced
    assert violations == []


def test_failure_records_are_self_contained():
    # Whatever a suite would serialize must replay through JSON round-trips.
    rep = run_suite("DOMINATE", seed=3, trials=10)
    assert rep.passed
    # Build a pseudo-record from a generated case to exercise the path.
    record = {
        "assertion": "dominate:Q_mu(t*eps)>=Q_nu(eps)",
        "case": {
            "suite": "DOMINATE",
            "points": [[0.0, 0.0], [0.5, 0.1], [0.9, 0.8]],
            "nu": [0.2, 0.5, 0.3],
            "rho": [0.4, 0.4, 0.2],
            "t": 0.5,
            "eps": 0.3,
        },
    }
    roundtrip = json.loads(json.dumps(record))
    reproduced, violations = replay(roundtrip)
    assert not reproduced  # the lemma holds on this instance
    assert violations == []


def test_default_trials_match_contract():
    assert DEFAULT_TRIALS["CHAIN"] == 200
    assert DEFAULT_TRIALS["METRICREL"] == 500
    assert DEFAULT_TRIALS["STRASSEN"] == 500
    for name in ("MARKOV", "DOMINATE", "LPKATOK"):
        assert DEFAULT_TRIALS[name] >= 300
