"""Batch front end: suite verification, config-driven experiments, replay.

Subcommands
-----------
mdl verify --suite NAME[,NAME...] [--seed S] [--trials T] [--out DIR] [--strict]
mdl experiment CONFIG.json [--out DIR] [--strict]
mdl replay COUNTEREXAMPLE.json

Exit codes: 0 success, 1 suite failure (or non-reproducing replay),
2 configuration/argument error, 3 budget overrun under --strict.
Outputs are byte-identical across reruns with the same inputs; wall-clock
timings go to stderr only.  MDL_THREADS caps the experiment worker pool.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import estimators, suites
from .covering import CountKind, Method, box_dimension_counts, count
from .measures import FiniteMeasure
from .metric_core import MetricAlphabet, TruncationSpec
from .quantization import product_measure_rule, quantization_number
from .entropy import katok_number_space
from .solvers import NodeBudgetExceeded
from .systems import (
    BudgetExceeded,
    FullShift,
    SymbolicSystem,
    lift,
    make_block_system,
    make_grid_alphabet,
    make_reciprocal_alphabet,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

CSV_HEADER = "eps,n,quantity,value,exact,method"


class ConfigError(ValueError):
    pass


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    names = [s.strip().upper() for s in args.suite.split(",") if s.strip()]
    if not names:
        print("error: no suites named", file=sys.stderr)
        return EXIT_CONFIG
    for name in names:
        if name not in suites.SUITE_NAMES:
            print(f"error: unknown suite {name!r}", file=sys.stderr)
            return EXIT_CONFIG
    out_dir = Path(args.out)
    any_fail = False
    any_skip = False
    for name in names:
        report = suites.run_suite(name, seed=args.seed, trials=args.trials)
        _write_text(out_dir / f"suite_{name}.json", _json_dumps(report.to_json_dict()))
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        print(f"{name}: {status} ({len(report.failures)} failures, trials={report.trials})")
        for warning in report.warnings:
            print(f"  warning: {warning}")
        print(f"  runtime: {report.runtime_seconds:.2f}s", file=sys.stderr)
        any_fail = any_fail or bool(report.failures)
        any_skip = any_skip or report.skipped
    if any_fail:
        return EXIT_FAIL
    if any_skip and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "measure": {"kind": "uniform"},
    "method": "exact",
    "budget": {"max_states": 200_000, "node_budget": 2_000_000},
    "seed": 0,
    "plot": False,
    "n_range": None,
}


def _resolve_config(raw: dict) -> dict:
    cfg = dict(_DEFAULTS)
    cfg.update(raw)
    for key in ("system", "quantity", "eps_ladder"):
        if key not in cfg or cfg[key] is None:
            raise ConfigError(f"missing config field: {key}")
    ladder = [float(e) for e in cfg["eps_ladder"]]
    if any(e <= 0 for e in ladder) or any(not a > b for a, b in zip(ladder, ladder[1:])):
        raise ConfigError("eps_ladder must be positive and strictly decreasing")
    cfg["eps_ladder"] = ladder
    budget = dict(_DEFAULTS["budget"])
    budget.update(cfg.get("budget") or {})
    if any(v <= 0 for v in budget.values()):
        raise ConfigError("budgets must be positive")
    cfg["budget"] = budget
    q = cfg["quantity"]
    qkind = q.get("kind")
    if qkind == "count":
        if q.get("count_kind") not in ("S", "R", "N", "C"):
            raise ConfigError("count_kind must be one of S, R, N, C")
    elif qkind == "quantization":
        if q.get("metric", "lp") not in ("wp", "lp"):
            raise ConfigError("quantization metric must be 'wp' or 'lp'")
        if float(q.get("p", 1.0)) < 1:
            raise ConfigError("quantization p must be >= 1")
    elif qkind == "katok":
        if not 0 < float(q.get("delta", -1)) < 1:
            raise ConfigError("katok delta must lie in (0, 1)")
    elif qkind != "box_counts":
        raise ConfigError(f"unknown quantity kind: {qkind!r}")
    if cfg["quantity"]["kind"] != "box_counts":
        if cfg["n_range"] is None:
            raise ConfigError("n_range required for per-horizon quantities")
        lo, hi = int(cfg["n_range"][0]), int(cfg["n_range"][1])
        if lo < 1 or hi < lo:
            raise ConfigError("n_range must satisfy 1 <= n_min <= n_max")
        cfg["n_range"] = [lo, hi]
    if cfg["method"] not in ("exact", "greedy"):
        raise ConfigError("method must be 'exact' or 'greedy'")
    return cfg


def _build_system(spec: dict):
    kind = spec.get("kind")
    W = int(spec.get("W", 0))
    if kind == "grid":
        alpha = make_grid_alphabet(int(spec["m"]))
    elif kind == "reciprocal":
        alpha = make_reciprocal_alphabet(int(spec["N"]))
    elif kind == "alphabet":
        alpha = MetricAlphabet(tuple(float(v) for v in spec["values"]))
    elif kind == "block":
        return make_block_system(
            int(spec["K"]),
            a_rule=spec.get("a", "default"),
            b_rule=spec.get("b", "default"),
            W=W,
        )
    else:
        raise ConfigError(f"unknown system kind: {kind!r}")
    return SymbolicSystem(alpha, TruncationSpec(W, alpha.diam_A), FullShift())


def _measure_rule(spec: dict, sys_obj: SymbolicSystem):
    kind = (spec or {}).get("kind", "uniform")
    if kind == "uniform":
        return lambda s, n, space, states: FiniteMeasure.uniform(space)
    if kind == "product":
        nu = np.asarray([float(x) for x in spec["nu"]], dtype=float)
        if len(nu) != len(sys_obj.alphabet):
            raise ConfigError("product measure nu must match the alphabet size")
        return product_measure_rule(nu)
    raise ConfigError(f"unknown measure kind: {kind!r}")


def _cell_value(cfg, sys_obj, rule, eps: float, n: int) -> tuple[str, int, bool, str]:
    """One (eps, n) experiment cell -> (quantity label, value, exact, method)."""
    q = cfg["quantity"]
    budget = cfg["budget"]
    method = cfg["method"]
    space, states = lift(sys_obj, n, max_states=budget["max_states"])
    if q["kind"] == "count":
        ck = CountKind[q["count_kind"]]
        res = count(space, eps, ck, Method.GREEDY if method == "greedy" else Method.BRANCH_BOUND,
                    node_budget=budget["node_budget"])
        return ck.name, res.value, res.exact, res.method.value
    mu = rule(sys_obj, n, space, states)
    if q["kind"] == "quantization":
        metric = q.get("metric", "lp")
        p = float(q.get("p", 1.0))
        res = quantization_number(mu, eps, kind=metric, p=p, method=method,
                                  node_budget=budget["node_budget"])
        label = f"Q_{metric}" + (f"{p:g}" if metric == "wp" else "")
        return label, res.value, res.exact, method
    if q["kind"] == "katok":
        delta = float(q["delta"])
        kn = katok_number_space(space, mu, eps, delta, method=method,
                                node_budget=budget["node_budget"], n=n)
        return f"katok_d{delta:g}", kn.value, kn.exact, method
    raise ConfigError(f"unknown quantity kind: {q['kind']!r}")


def _worker_count() -> int:
    raw = os.environ.get("MDL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        print(f"warning: ignoring invalid MDL_THREADS={raw!r}", file=sys.stderr)
        return 1


def _run_cells(cfg, sys_obj, rule) -> list[dict]:
    lo, hi = cfg["n_range"]
    cells = [(eps, n) for eps in cfg["eps_ladder"] for n in range(lo, hi + 1)]
    workers = _worker_count()

    def run_cell(cell):
        eps, n = cell
        try:
            label, value, exact, method = _cell_value(cfg, sys_obj, rule, eps, n)
        except NodeBudgetExceeded:
            if cfg["method"] == "exact":
                greedy_cfg = dict(cfg, method="greedy")
                label, value, exact, method = _cell_value(greedy_cfg, sys_obj, rule, eps, n)
                exact = False
            else:
                raise
        return {"eps": eps, "n": n, "quantity": label, "value": value,
                "exact": exact, "method": method}

    if workers == 1:
        return [run_cell(c) for c in cells]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, cells))


def _rows_to_csv(rows: list[dict]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r['eps']!r},{r['n']},{r['quantity']},{r['value']},"
            f"{str(r['exact']).lower()},{r['method']}"
        )
    return "\n".join(lines) + "\n"


def _summary(cfg, rows) -> dict:
    ladder = cfg["eps_ladder"]
    per_eps = []
    all_exact = True
    for eps in ladder:
        curve = [(r["n"], r["value"]) for r in rows if r["eps"] == eps]
        all_exact = all_exact and all(r["exact"] for r in rows if r["eps"] == eps)
        if len(curve) >= 3:
            per_eps.append(estimators.growth_rate(curve))
        else:
            per_eps.append(None)
    summary: dict = {"config": cfg, "rates": [], "exact": all_exact}
    for eps, g in zip(ladder, per_eps):
        if g is None:
            summary["rates"].append({"eps": eps, "slope": None})
        else:
            summary["rates"].append({
                "eps": eps, "slope": g.slope, "intercept": g.intercept,
                "residual_max": g.residual_max, "upper_proxy": g.upper_proxy,
                "lower_proxy": g.lower_proxy, "window": list(g.window),
            })
    if len(ladder) >= 3 and all(g is not None for g in per_eps) and all(e < 1 for e in ladder):
        rep = estimators.dimension_report(per_eps, ladder)
        summary["ratio_upper"] = rep.ratio_upper
        summary["ratio_lower"] = rep.ratio_lower
        summary["fit_diagnostics"] = rep.fit_diagnostics
    return summary


def _box_summary(cfg, rows) -> dict:
    ladder = cfg["eps_ladder"]
    summary: dict = {"config": cfg, "counts": rows, "exact": all(r["exact"] for r in rows)}
    if len(ladder) >= 3 and all(e < 1 for e in ladder):
        rates = [math.log(r["value"]) for r in rows]
        rep = estimators.dimension_report(rates, ladder)
        summary["ratio_upper"] = rep.ratio_upper
        summary["ratio_lower"] = rep.ratio_lower
        summary["fit_diagnostics"] = rep.fit_diagnostics
    return summary


def _plot_svg(rows: list[dict], summary: dict) -> str:
    """Two-panel self-contained SVG: log count vs n, and ratio vs log(1/eps)."""
    width, height, pad = 720, 320, 42
    panel_w = (width - 3 * pad) / 2

    def scale(vals, lo_px, hi_px):
        vmin, vmax = min(vals), max(vals)
        if vmax == vmin:
            vmax = vmin + 1.0
        return lambda v: lo_px + (v - vmin) / (vmax - vmin) * (hi_px - lo_px)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    by_eps: dict[float, list[tuple[int, float]]] = {}
    for r in rows:
        if r["value"] >= 1:
            by_eps.setdefault(r["eps"], []).append((r["n"], math.log(r["value"])))
    if by_eps:
        all_n = [n for pts in by_eps.values() for n, _ in pts]
        all_y = [y for pts in by_eps.values() for _, y in pts]
        sx = scale(all_n, pad, pad + panel_w)
        sy = scale(all_y, height - pad, pad)
        palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
        for idx, (eps, pts) in enumerate(sorted(by_eps.items(), reverse=True)):
            pts = sorted(pts)
            path = " ".join(f"{sx(n):.2f},{sy(y):.2f}" for n, y in pts)
            color = palette[idx % len(palette)]
            parts.append(f'<polyline fill="none" stroke="{color}" points="{path}"/>')
            parts.append(
                f'<text x="{pad}" y="{pad - 24 + 12 * idx:.2f}" font-size="10" '
                f'fill="{color}">eps={eps!r}</text>'
            )
        parts.append(
            f'<text x="{pad + panel_w / 2:.2f}" y="{height - 8}" font-size="11" '
            f'text-anchor="middle">n (log count curves)</text>'
        )
    ratios = summary.get("fit_diagnostics", {}).get("ratios")
    if ratios:
        ladder = summary["config"]["eps_ladder"]
        xs = [math.log(1 / e) for e in ladder]
        sx2 = scale(xs, 2 * pad + panel_w, width - pad)
        sy2 = scale(ratios + [0.0], height - pad, pad)
        path = " ".join(f"{sx2(x):.2f},{sy2(r):.2f}" for x, r in zip(xs, ratios))
        parts.append(f'<polyline fill="none" stroke="#1f77b4" points="{path}"/>')
        parts.append(
            f'<text x="{2 * pad + panel_w + panel_w / 2:.2f}" y="{height - 8}" '
            f'font-size="11" text-anchor="middle">log(1/eps) vs ratio</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_experiment(args) -> int:
    cfg_path = Path(args.config)
    try:
        raw = json.loads(cfg_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = _resolve_config(raw)
        sys_obj = _build_system(cfg["system"])
        rule = _measure_rule(cfg.get("measure"), sys_obj)
    except (ConfigError, ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = Path(args.out)
    try:
        if cfg["quantity"]["kind"] == "box_counts":
            boxes = box_dimension_counts(sys_obj.alphabet, cfg["eps_ladder"])
            rows = [
                {"eps": b.eps, "n": 1, "quantity": "N_interval", "value": b.value,
                 "exact": b.exact, "method": b.method.value}
                for b in boxes
            ]
            summary = _box_summary(cfg, rows)
        else:
            rows = _run_cells(cfg, sys_obj, rule)
            summary = _summary(cfg, rows)
    except (BudgetExceeded, NodeBudgetExceeded) as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.strict and not all(r["exact"] for r in rows):
        print("error: --strict and some cells downgraded to greedy", file=sys.stderr)
        return EXIT_BUDGET
    _write_text(out_dir / "counts.csv", _rows_to_csv(rows))
    _write_text(out_dir / "summary.json", _json_dumps(summary))
    if cfg.get("plot"):
        _write_text(out_dir / "plot.svg", _plot_svg(rows, summary))
    print(f"wrote {out_dir / 'counts.csv'} ({len(rows)} rows)")
    if "ratio_upper" in summary:
        print(f"ratio bracket: [{summary['ratio_lower']!r}, {summary['ratio_upper']!r}]")
    return EXIT_OK


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


def cmd_replay(args) -> int:
    try:
        record = json.loads(Path(args.counterexample).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read counterexample: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(record, dict) or "assertion" not in record or "case" not in record:
        print("error: counterexample must carry 'assertion' and 'case'", file=sys.stderr)
        return EXIT_CONFIG
    try:
        reproduced, violations = suites.replay(record)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if reproduced:
        print(f"reproduced: {record['assertion']}")
        for v in violations:
            if v["assertion"] == record["assertion"]:
                print(f"  detail: {json.dumps(v['detail'], sort_keys=True)}")
        return EXIT_OK
    print(f"did NOT reproduce: {record['assertion']} ({len(violations)} other violations)")
    return EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdl", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", default=",".join(suites.SUITE_NAMES),
                   help="comma-separated suite names (default: all)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=None,
                   help="override per-suite default trial counts")
    v.add_argument("--out", default="reports")
    v.add_argument("--strict", action="store_true",
                   help="exit 3 when a suite is skipped on budget")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="run a config-driven experiment")
    e.add_argument("config", help="JSON experiment config")
    e.add_argument("--out", default="experiment_out")
    e.add_argument("--strict", action="store_true",
                   help="exit 3 instead of downgrading to greedy on budget")
    e.set_defaults(func=cmd_experiment)

    r = sub.add_parser("replay", help="replay a serialized counterexample")
    r.add_argument("counterexample")
    r.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
