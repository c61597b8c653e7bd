"""Named, reproducible invariant suites with replayable counterexamples.

Each suite draws instances deterministically from its seed, evaluates a
family of exact finite-scale inequalities, and reports violations as
self-contained JSON records (the full instance data rides along, so a
record can be replayed later).  Budget overruns mark a suite skipped,
never failed.

Suites
------
CHAIN       separated/spanning/cover chain N(2e) <= R(e) <= S(e) <= R(e/2) <= N(e/2)
CLOSEDOPEN  closed vs open cover counts N(2e) <= C(e) <= N(e)
SUBADD      cover-count submultiplicativity on full-shift lifts
KS          Katok vs cover-join numbers through certified covers
BKBOUND     local decay slopes vs separated-count growth
BKCONVEX    mixture local decay vs component decay plus mixing cost
MARKOV      W_p quantization vs mass-cover numbers (both directions)
DOMINATE    domination monotonicity of W_1 quantization (scaled, C = 1)
LPKATOK     LP quantization sandwiched by closed-ball mass-cover numbers
METRICREL   W_q/W_p/LP comparison inequalities
STRASSEN    coupling-scan LP distance equals the subset-enumeration oracle
BLOCK       block-union system: decay/cover ratios and per-block slopes
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .covering import CountKind, Method, count
from .entropy import (
    brin_katok_average,
    katok_number,
    katok_number_space,
    make_ball_cover,
    shapira_number,
)
from .estimators import growth_rate
from .measures import FiniteMeasure, convex_combine, product_measure
from .metric_core import FiniteMetricSpace, TruncationSpec
from .quantization import product_measure_rule, quantization_number
from .solvers import NodeBudgetExceeded
from .systems import (
    BudgetExceeded,
    FullShift,
    SymbolicSystem,
    lift,
    make_block_system,
    make_grid_alphabet,
)
from .transport import levy_prokhorov, levy_prokhorov_subsets, wasserstein

__all__ = ["SuiteReport", "run_suite", "replay", "SUITE_NAMES", "DEFAULT_TRIALS"]


DEFAULT_BUDGET = {"max_states": 200_000, "node_budget": 2_000_000, "max_points": 4096}

DEFAULT_TRIALS = {
    "CHAIN": 200,
    "CLOSEDOPEN": 200,
    "SUBADD": 60,
    "KS": 25,
    "BKBOUND": 8,
    "BKCONVEX": 60,
    "MARKOV": 300,
    "DOMINATE": 300,
    "LPKATOK": 300,
    "METRICREL": 500,
    "STRASSEN": 500,
    "BLOCK": 3,
}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    budget: dict
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    skipped: bool = False
    runtime_seconds: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures and not self.skipped

    def to_json_dict(self) -> dict:
        # runtime is intentionally excluded: reports must be byte-identical
        # across reruns with the same (suite, seed, trials, budget).
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "budget": self.budget,
            "passed": self.passed,
            "skipped": self.skipped,
            "warnings": list(self.warnings),
            "failures": _jsonable(self.failures),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _fail(assertion: str, case: dict, **detail) -> dict:
    return {"assertion": assertion, "case": _jsonable(case), "detail": _jsonable(detail)}


def _planar_points(rng, lo: int = 5, hi: int = 40) -> np.ndarray:
    P = int(rng.integers(lo, hi + 1))
    return rng.random((P, 2))


def _space(case: dict) -> FiniteMetricSpace:
    return FiniteMetricSpace.euclidean(np.asarray(case["points"], dtype=float))


def _full_shift(m: int, W: int) -> SymbolicSystem:
    alpha = make_grid_alphabet(m)
    return SymbolicSystem(alpha, TruncationSpec(W, alpha.diam_A), FullShift())


# ---------------------------------------------------------------------------
# CHAIN / CLOSEDOPEN
# ---------------------------------------------------------------------------


def _gen_chain(rng, trials):
    for _ in range(trials):
        pts = _planar_points(rng)
        eps = sorted(rng.uniform(0.05, 0.7, size=5), reverse=True)
        yield {"points": pts.tolist(), "eps_list": [float(e) for e in eps]}


def _check_chain(case, budget):
    space = _space(case)
    nb = budget["node_budget"]
    out = []
    for eps in case["eps_list"]:
        vals = {
            "N2": count(space, 2 * eps, CountKind.N, node_budget=nb).value,
            "R": count(space, eps, CountKind.R, node_budget=nb).value,
            "S": count(space, eps, CountKind.S, node_budget=nb).value,
            "Rh": count(space, eps / 2, CountKind.R, node_budget=nb).value,
            "Nh": count(space, eps / 2, CountKind.N, node_budget=nb).value,
        }
        chain = [("N2<=R", vals["N2"], vals["R"]), ("R<=S", vals["R"], vals["S"]),
                 ("S<=Rh", vals["S"], vals["Rh"]), ("Rh<=Nh", vals["Rh"], vals["Nh"])]
        for name, lhs, rhs in chain:
            if not lhs <= rhs:
                out.append(_fail(f"chain:{name}", case, eps=eps, lhs=lhs, rhs=rhs, counts=vals))
    return out


def _check_closedopen(case, budget):
    space = _space(case)
    nb = budget["node_budget"]
    out = []
    for eps in case["eps_list"]:
        n2 = count(space, 2 * eps, CountKind.N, node_budget=nb).value
        c = count(space, eps, CountKind.C, node_budget=nb).value
        n1 = count(space, eps, CountKind.N, node_budget=nb).value
        if not n2 <= c:
            out.append(_fail("closedopen:N2<=C", case, eps=eps, lhs=n2, rhs=c))
        if not c <= n1:
            out.append(_fail("closedopen:C<=N", case, eps=eps, lhs=c, rhs=n1))
    return out


# ---------------------------------------------------------------------------
# SUBADD
# ---------------------------------------------------------------------------


def _gen_subadd(rng, trials):
    combos = [(m, n, mm) for m in (2, 3) for n in (1, 2, 3) for mm in (1, 2, 3) if n + mm <= 4]
    for t in range(trials):
        m, n, mm = combos[t % len(combos)]
        eps = float(rng.choice([0.75, 0.5, 0.25, 0.125]) if t % 2 == 0 else rng.uniform(0.05, 1.0))
        yield {"alphabet_m": m, "n": n, "m": mm, "eps": eps}


def _check_subadd(case, budget):
    sysm = _full_shift(case["alphabet_m"], 0)
    n, m, eps = case["n"], case["m"], case["eps"]
    nb = budget["node_budget"]
    ms = budget["max_states"]
    vals = {}
    for label, horizon in (("n", n), ("m", m), ("nm", n + m)):
        space, _ = lift(sysm, horizon, max_states=ms)
        vals[label] = count(space, eps, CountKind.N, node_budget=nb).value
    if not vals["nm"] <= vals["n"] * vals["m"]:
        return [_fail("subadd:N(n+m)<=N(n)N(m)", case, **vals)]
    return []


# ---------------------------------------------------------------------------
# KS (Katok vs cover-join numbers)
# ---------------------------------------------------------------------------


def _gen_ks(rng, trials):
    for t in range(trials):
        m = int(rng.integers(2, 4))
        W = 0 if m == 3 else int(rng.integers(0, 2))
        n = int(rng.integers(2, 4))
        eps = float(rng.uniform(0.3, 1.0))
        delta = float(rng.uniform(0.05, 0.5))
        nu = rng.dirichlet(np.ones(m)).tolist()
        yield {"alphabet_m": m, "W": W, "n": n, "eps": eps, "delta": delta, "nu": nu}


def _check_ks(case, budget):
    sysm = _full_shift(case["alphabet_m"], case["W"])
    nu = np.asarray(case["nu"])
    rule = product_measure_rule(nu)
    n, eps, delta = case["n"], case["eps"], case["delta"]
    ms, nb = budget["max_states"], budget["node_budget"]
    base, _ = lift(sysm, 1, max_states=ms)
    cover = make_ball_cover(base, eps)
    out = []
    join_n = shapira_number(sysm, rule, cover, n, delta, max_states=ms, node_budget=nb)
    katok_eps = katok_number(sysm, rule, n, eps, delta, max_states=ms, node_budget=nb).value
    if not katok_eps <= join_n:
        out.append(_fail("ks:katok(eps)<=join", case, katok=katok_eps, join=join_n,
                         cover_diam=cover.diam))
    katok_q = katok_number(sysm, rule, n, eps / 4, delta, max_states=ms, node_budget=nb).value
    if not join_n <= katok_q:
        out.append(_fail("ks:join<=katok(eps/4)", case, join=join_n, katok=katok_q,
                         cover_leb=cover.leb))
    return out


# ---------------------------------------------------------------------------
# BKBOUND / BKCONVEX
# ---------------------------------------------------------------------------

_BK_TOL = 0.05


def _gen_bkbound(rng, trials):
    fixed = [
        {"kind": "uniform", "m": 2, "W": 0, "eps": 0.5, "n_max": 4},
        {"kind": "uniform", "m": 2, "W": 1, "eps": 0.25, "n_max": 4},
        {"kind": "dirac", "m": 2, "W": 0, "eps": 0.5, "n_max": 4},
    ]
    cases = list(fixed)
    while len(cases) < trials:
        m = int(rng.integers(2, 4))
        nu = rng.dirichlet(np.ones(m) * 4).tolist()
        cases.append({"kind": "biased", "m": m, "W": 0, "eps": 0.2, "n_max": 4, "nu": nu})
    return cases[:trials]


def _check_bkbound(case, budget):
    sysm = _full_shift(case["m"], case["W"])
    ms = budget["max_states"]
    ns = list(range(1, case["n_max"] + 1))
    eps = case["eps"]
    if case["kind"] == "dirac":
        def rule(s, n, space, states):
            return FiniteMeasure.dirac(space, 0)
    elif case["kind"] == "uniform":
        rule = product_measure_rule(np.full(case["m"], 1.0 / case["m"]))
    else:
        rule = product_measure_rule(np.asarray(case["nu"]))
    # Separated-count growth at scale eps/2 over the same horizons.
    s_curve = []
    for n in ns:
        space, _ = lift(sysm, n, max_states=ms)
        s_curve.append((n, count(space, eps / 2, CountKind.S).value))
    s_slope = growth_rate(s_curve).slope
    avg_slope, table = brin_katok_average(sysm, rule, eps, ns, max_states=ms)
    out = []
    if case["kind"] in ("uniform", "dirac"):
        for word, _, slope in table:
            if not slope <= s_slope + _BK_TOL:
                out.append(_fail("bkbound:pointwise", case, word=list(word),
                                 decay_slope=slope, sep_slope=s_slope))
    if not avg_slope <= s_slope + _BK_TOL:
        out.append(_fail("bkbound:averaged", case, decay_slope=avg_slope, sep_slope=s_slope))
    return out


def _gen_bkconvex(rng, trials):
    for _ in range(trials):
        m = int(rng.integers(2, 4))
        W = int(rng.integers(0, 2))
        n = int(rng.integers(1, 4))
        yield {
            "m": m,
            "W": W,
            "n": n,
            "eps": float(rng.uniform(0.1, 0.8)),
            "t": float(rng.uniform(0.1, 0.9)),
            "nu1": rng.dirichlet(np.ones(m)).tolist(),
            "nu2": rng.dirichlet(np.ones(m)).tolist(),
        }


def _check_bkconvex(case, budget):
    sysm = _full_shift(case["m"], case["W"])
    ms = budget["max_states"]
    n, eps, t = case["n"], case["eps"], case["t"]
    space, states = lift(sysm, n, max_states=ms)
    mu1 = product_measure(sysm, np.asarray(case["nu1"]), n, space=space, states=states)
    mu2 = product_measure(sysm, np.asarray(case["nu2"]), n, space=space, states=states)
    mix = convex_combine([(t, mu1), (1 - t, mu2)])
    d = space.dmatrix
    balls = d < eps
    out = []
    mix_vals = []
    comp_vals = {1: [], 2: []}
    for i in range(len(space)):
        bm = float(mix.weights[balls[i]].sum())
        b1 = float(mu1.weights[balls[i]].sum())
        b2 = float(mu2.weights[balls[i]].sum())
        vm = -math.log(bm) / n
        mix_vals.append(vm)
        comp_vals[1].append(-math.log(b1) / n if b1 > 0 else math.inf)
        comp_vals[2].append(-math.log(b2) / n if b2 > 0 else math.inf)
        for tk, comp in ((t, comp_vals[1][i]), (1 - t, comp_vals[2][i])):
            bound = comp + (-math.log(tk)) / n
            if not vm <= bound + 1e-9:
                out.append(_fail("bkconvex:pointwise", case, point=i,
                                 mixture_decay=vm, component_bound=bound))
    avg_mix = float(np.dot(mix.weights, mix_vals))
    avg_bound = t * (float(np.dot(mu1.weights, comp_vals[1])) + (-math.log(t)) / n) + (
        1 - t
    ) * (float(np.dot(mu2.weights, comp_vals[2])) + (-math.log(1 - t)) / n)
    if not avg_mix <= avg_bound + 1e-9:
        out.append(_fail("bkconvex:averaged", case, lhs=avg_mix, rhs=avg_bound))
    return out


# ---------------------------------------------------------------------------
# MARKOV / DOMINATE / LPKATOK
# ---------------------------------------------------------------------------


def _gen_markov(rng, trials):
    for t in range(trials):
        pts = _planar_points(rng, 4, 12)
        yield {
            "points": pts.tolist(),
            "weights": rng.dirichlet(np.ones(len(pts))).tolist(),
            "eps": float(rng.uniform(0.05, 0.8)),
            "p": float(rng.choice([1.0, 2.0])),
        }


def _check_markov(case, budget):
    space = _space(case)
    mu = FiniteMeasure(space, np.asarray(case["weights"]))
    eps, p = case["eps"], case["p"]
    nb = budget["node_budget"]
    out = []
    # Lower direction: Q_{W_1}(eps) >= mass-cover number at (2 eps, 3/4).
    q1 = quantization_number(mu, eps, "wp", p=1.0, node_budget=nb).value
    k_low = katok_number_space(space, mu, 2 * eps, 0.75, node_budget=nb).value
    if not q1 >= k_low:
        out.append(_fail("markov:Q>=K(2eps,3/4)", case, q=q1, katok=k_low))
    # Upper direction: Q_{W_p}(eps) <= mass-cover number at (2^{-1/p} eps, delta)
    # for any delta below (eps/diam)^p / 2.
    if eps < space.diam:
        delta = 0.49 * (eps / space.diam) ** p
        if 0 < delta < 1:
            qp = quantization_number(mu, eps, "wp", p=p, node_budget=nb).value
            k_up = katok_number_space(
                space, mu, 2.0 ** (-1.0 / p) * eps, delta, node_budget=nb
            ).value
            if not qp <= k_up:
                out.append(_fail("markov:Q<=K(eps/2^{1/p},delta)", case,
                                 q=qp, katok=k_up, delta=delta))
    return out


def _gen_dominate(rng, trials):
    for _ in range(trials):
        pts = _planar_points(rng, 4, 10)
        P = len(pts)
        yield {
            "points": pts.tolist(),
            "nu": rng.dirichlet(np.ones(P)).tolist(),
            "rho": rng.dirichlet(np.ones(P)).tolist(),
            "t": float(rng.uniform(0.1, 0.9)),
            "eps": float(rng.uniform(0.05, 1.0)),
        }


def _check_dominate(case, budget):
    space = _space(case)
    nu = FiniteMeasure(space, np.asarray(case["nu"]))
    rho = FiniteMeasure(space, np.asarray(case["rho"]))
    t, eps = case["t"], case["eps"]
    mu = convex_combine([(t, nu), (1 - t, rho)])  # mu >= t * nu by construction
    nb = budget["node_budget"]
    q_mu = quantization_number(mu, t * eps, "wp", p=1.0, node_budget=nb).value
    q_nu = quantization_number(nu, eps, "wp", p=1.0, node_budget=nb).value
    if not q_mu >= q_nu:
        return [_fail("dominate:Q_mu(t*eps)>=Q_nu(eps)", case, q_mu=q_mu, q_nu=q_nu)]
    return []


def _gen_lpkatok(rng, trials):
    for _ in range(trials):
        pts = _planar_points(rng, 4, 12)
        yield {
            "points": pts.tolist(),
            "weights": rng.dirichlet(np.ones(len(pts))).tolist(),
            "eps": float(rng.uniform(0.05, 0.9)),
        }


def _check_lpkatok(case, budget):
    space = _space(case)
    mu = FiniteMeasure(space, np.asarray(case["weights"]))
    eps = case["eps"]
    nb = budget["node_budget"]
    q = quantization_number(mu, eps, "lp", node_budget=nb).value
    upper = katok_number_space(space, mu, eps, eps, ball_kind="closed", node_budget=nb).value
    # The quantization witness reaches mass >= 1-eps, which only clears the
    # strict mass threshold after a one-ulp bump of delta.
    delta_lo = math.nextafter(eps, 2.0)
    lower = katok_number_space(space, mu, 2 * eps, delta_lo, ball_kind="closed",
                               node_budget=nb).value
    out = []
    if not lower <= q:
        out.append(_fail("lpkatok:K(2eps,eps+)<=Q", case, katok=lower, q=q))
    if not q <= upper:
        out.append(_fail("lpkatok:Q<=K(eps,eps)", case, q=q, katok=upper))
    return out


# ---------------------------------------------------------------------------
# METRICREL / STRASSEN
# ---------------------------------------------------------------------------

_REL_TOL = 1e-9


def _gen_metricrel(rng, trials):
    for _ in range(trials):
        pts = _planar_points(rng, 2, 10)
        P = len(pts)
        q = float(rng.uniform(1.0, 3.0))
        yield {
            "points": pts.tolist(),
            "w1": rng.dirichlet(np.ones(P)).tolist(),
            "w2": rng.dirichlet(np.ones(P)).tolist(),
            "q": q,
            "p": q + float(rng.uniform(0.0, 2.0)),
        }


def _check_metricrel(case, budget):
    space = _space(case)
    mu = FiniteMeasure(space, np.asarray(case["w1"]))
    nu = FiniteMeasure(space, np.asarray(case["w2"]))
    p, q = case["p"], case["q"]
    diam = space.diam
    wq = wasserstein(mu, nu, q)
    wp = wasserstein(mu, nu, p)
    lp = levy_prokhorov(mu, nu)
    out = []
    if not wq <= wp + _REL_TOL:
        out.append(_fail("metricrel:Wq<=Wp", case, wq=wq, wp=wp))
    rhs = diam ** (1 - q / p) * wq ** (q / p)
    if not wp <= rhs + _REL_TOL:
        out.append(_fail("metricrel:Wp<=diam^(1-q/p)Wq^(q/p)", case, wp=wp, rhs=rhs))
    if not lp ** (1 + 1 / p) <= wp + _REL_TOL:
        out.append(_fail("metricrel:LP^(1+1/p)<=Wp", case, lp=lp, wp=wp))
    rhs2 = (1 + diam**p) ** (1 / p) * lp ** (1 / p)
    if not wp <= rhs2 + _REL_TOL:
        out.append(_fail("metricrel:Wp<=(1+diam^p)^(1/p)LP^(1/p)", case, wp=wp, rhs=rhs2))
    return out


def _gen_strassen(rng, trials):
    for _ in range(trials):
        pts = _planar_points(rng, 2, 6)
        P = len(pts)
        yield {
            "points": pts.tolist(),
            "w1": rng.dirichlet(np.ones(P)).tolist(),
            "w2": rng.dirichlet(np.ones(P)).tolist(),
        }


def _check_strassen(case, budget):
    space = _space(case)
    mu = FiniteMeasure(space, np.asarray(case["w1"]))
    nu = FiniteMeasure(space, np.asarray(case["w2"]))
    a = levy_prokhorov(mu, nu)
    b = levy_prokhorov_subsets(mu, nu)
    if abs(a - b) > _REL_TOL:
        return [_fail("strassen:coupling==subsets", case, coupling=a, subsets=b)]
    return []


# ---------------------------------------------------------------------------
# BLOCK
# ---------------------------------------------------------------------------

_BLOCK_MIXTURES = [
    (0.25, (0.25, 0.25, 0.25)),
    (0.40, (0.30, 0.20, 0.10)),
    (0.10, (0.50, 0.30, 0.10)),
]
_BLOCK_LADDER = [2.0**-12, 2.0**-16, 2.0**-20]


def _block_atom_classes(params, t0: float, tks, n: int):
    """(per-atom mass, atom count) classes for a block mixture at W = 0."""
    classes = []
    if t0 > 0:
        classes.append((t0, 1))
    for tk, bk in zip(tks, params.b):
        cnt = bk**n
        classes.append((tk / cnt, cnt))
    return classes


def _analytic_singleton_katok(classes, delta: float) -> int:
    """Atoms needed for mass strictly above 1 - delta, largest first."""
    need = 1.0 - delta
    cum = 0.0
    used = 0
    for mass, cnt in sorted(classes, key=lambda mc: -mc[0]):
        if cum + mass * cnt > need:
            r = math.floor((need - cum) / mass) + 1
            return used + r
        cum += mass * cnt
        used += cnt
    raise ValueError("threshold unreachable")


def _gen_block(rng, trials):
    return [
        {"t0": t0, "tks": list(tks), "ladder": list(_BLOCK_LADDER)}
        for t0, tks in _BLOCK_MIXTURES[:trials]
    ]


def _block_uniform_mixture(sysb, n, space, states, t0, tks):
    groups = sysb.block_index_sets()
    W = sysb.trunc.W
    L = n + 2 * W
    weights = np.zeros(len(states))
    fp_symbol = groups[-1][0]
    group_of_symbol = {}
    for g, idxs in enumerate(groups[:-1]):
        for s in idxs:
            group_of_symbol[s] = g
    for i, w in enumerate(states):
        if all(s == fp_symbol for s in w):
            weights[i] = t0
        else:
            g = group_of_symbol[w[0]]
            weights[i] = tks[g] / len(groups[g]) ** L
    return FiniteMeasure(space, weights)


def _check_block(case, budget):
    sysb = make_block_system(3, W=0)
    params = sysb.constraint.params
    t0, tks = case["t0"], tuple(case["tks"])
    ladder = case["ladder"]
    ms = budget["max_states"]
    out = []
    ns = list(range(2, 7))
    log_b = sysb.analytic_block_entropies()

    # The whole ladder sits below the smallest grid spacing, so every ball
    # in any lift is a singleton and counts are scale-free.
    min_gap = min(params.eps)
    assert max(ladder) < min_gap

    # (ii) fixed-delta mass-cover ratio at the finest scale.
    delta0 = 0.1
    classes_by_n = {n: _block_atom_classes(params, t0, tks, n) for n in ns}
    katok_curve = [(n, _analytic_singleton_katok(classes_by_n[n], delta0)) for n in ns]
    k_slope = growth_rate(katok_curve).slope
    eps_fine = ladder[-1]
    k_ratio = k_slope / math.log(1 / eps_fine)
    if not k_ratio <= 0.25:
        out.append(_fail("block:katok_ratio", case, ratio=k_ratio, slope=k_slope))

    # (i) averaged local-decay ratio at the finest scale: per-atom masses are
    # t_k / b_k^n, so the per-point decay slope is exactly log b_k.
    bk_slope = t0 * 0.0 + sum(tk * lb for tk, lb in zip(tks, log_b))
    bk_ratio = bk_slope / math.log(1 / eps_fine)
    if not bk_ratio <= 0.2:
        out.append(_fail("block:bk_ratio", case, ratio=bk_ratio, slope=bk_slope))

    # Cross-check the analytic singleton counts against the generic pipeline
    # at an affordable horizon.
    n_check = 2
    space, states = lift(sysb, n_check, max_states=ms)
    mu = _block_uniform_mixture(sysb, n_check, space, states, t0, tks)
    kn = katok_number_space(space, mu, ladder[0], delta0).value
    analytic = _analytic_singleton_katok(classes_by_n[n_check], delta0)
    if kn != analytic:
        out.append(_fail("block:analytic_crosscheck", case, generic=kn, analytic=analytic))

    # (iii) mixture decay bound: measured averaged decay at each tested n is at
    # most sum_k t_k [log b_k + log(1/t_k)/n] + t0 log(1/t0)/n for the uniform
    # block components (their smallest atom is b_k^{-n}).
    for n in (1, 2):
        sp_n, st_n = lift(sysb, n, max_states=ms)
        mu_n = _block_uniform_mixture(sysb, n, sp_n, st_n, t0, tks)
        balls = sp_n.dmatrix < ladder[0]
        decays = np.array([
            -math.log(float(mu_n.weights[balls[i]].sum())) / n for i in range(len(sp_n))
        ])
        measured = float(np.dot(mu_n.weights, decays))
        bound = sum(
            tk * (lb + math.log(1 / tk) / n) for tk, lb in zip(tks, log_b)
        ) + (t0 * math.log(1 / t0) / n if t0 > 0 else 0.0)
        if not measured <= bound + 1e-9:
            out.append(_fail("block:decay_bound", case, n=n, measured=measured, bound=bound))

    # (iv) per-block slope oracle: covering growth on the first block alone.
    sys1 = make_block_system(1, W=0, includes_fixed_point=False)
    cov_curve = []
    for n in range(2, 6):
        sp1, _ = lift(sys1, n, max_states=ms)
        cov_curve.append((n, count(sp1, params.eps[0] / 2, CountKind.N).value))
    slope1 = growth_rate(cov_curve).slope
    if not abs(slope1 - math.log(3)) <= 0.1 * math.log(3):
        out.append(_fail("block:X1_slope", case, slope=slope1, target=math.log(3)))
    return out


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

_SUITES = {
    "CHAIN": (_gen_chain, _check_chain),
    "CLOSEDOPEN": (_gen_chain, _check_closedopen),
    "SUBADD": (_gen_subadd, _check_subadd),
    "KS": (_gen_ks, _check_ks),
    "BKBOUND": (_gen_bkbound, _check_bkbound),
    "BKCONVEX": (_gen_bkconvex, _check_bkconvex),
    "MARKOV": (_gen_markov, _check_markov),
    "DOMINATE": (_gen_dominate, _check_dominate),
    "LPKATOK": (_gen_lpkatok, _check_lpkatok),
    "METRICREL": (_gen_metricrel, _check_metricrel),
    "STRASSEN": (_gen_strassen, _check_strassen),
    "BLOCK": (_gen_block, _check_block),
}

SUITE_NAMES = tuple(_SUITES.keys())


def run_suite(
    name: str, seed: int = 0, trials: int | None = None, budget: dict | None = None
) -> SuiteReport:
    """Run one named suite; deterministic in (name, seed, trials, budget)."""
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    if trials is None:
        trials = DEFAULT_TRIALS[name]
    full_budget = dict(DEFAULT_BUDGET)
    if budget:
        full_budget.update(budget)
    gen, check = _SUITES[name]
    report = SuiteReport(name, seed, trials, full_budget)
    start = time.perf_counter()
    if trials == 0:
        report.warnings.append("trials=0: vacuous pass")
        report.runtime_seconds = time.perf_counter() - start
        return report
    rng = np.random.default_rng(seed)
    try:
        for case in gen(rng, trials):
            case = {"suite": name, **case}
            report.failures.extend(check(case, full_budget))
    except (NodeBudgetExceeded, BudgetExceeded) as exc:
        report.skipped = True
        report.warnings.append(f"budget exceeded: {exc}")
    report.failures.sort(key=lambda f: (f["assertion"], repr(f["detail"])))
    report.runtime_seconds = time.perf_counter() - start
    return report


def replay(record: dict, budget: dict | None = None) -> tuple[bool, list]:
    """Re-run a serialized counterexample; True when the violation reproduces."""
    case = record["case"]
    name = case.get("suite")
    if name not in _SUITES:
        raise KeyError(f"counterexample does not name a known suite: {name!r}")
    full_budget = dict(DEFAULT_BUDGET)
    if budget:
        full_budget.update(budget)
    violations = _SUITES[name][1](case, full_budget)
    reproduced = any(v["assertion"] == record["assertion"] for v in violations)
    return reproduced, violations
