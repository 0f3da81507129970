"""Command line front end.

Subcommands: analyze, sweep, sample, coef-convergence. Outputs are JSON or
CSV with fixed schemas ('.' decimals, 12 significant digits). Exit codes:
0 success, 2 validation error, 3 I/O error. GLDPC_THREADS caps worker
parallelism for sweeps and Monte Carlo trials.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import bounds, ensemble, growth, sampler
from .ensemble import DivisibilityError
from .specfile import SpecFile, SpecFileError, load_spec_file


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def _env_threads() -> int:
    raw = os.environ.get("GLDPC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _tagged(value: Any, formula: str) -> Dict[str, Any]:
    return {"value": value, "formula": formula}


def _analyze_report(spec: SpecFile) -> Dict[str, Any]:
    m = spec.mixture
    report: Dict[str, Any] = {
        "cn_types": [
            {"s": t.s, "k": t.k, "min_dist": t.r} for t in m.types
        ],
        "rho": [float(r) for r in m.rho],
        "cns_per_edge": _tagged(ensemble.cns_per_edge(m), "sum_t rho_t / s_t"),
        "cn_type_fractions": _tagged(
            list(ensemble.cn_type_fractions(m)),
            "rho_t / (s_t * cns_per_edge)",
        ),
        "weight2_density": _tagged(
            ensemble.weight_two_density(m),
            "2 * sum over min-dist-2 types of rho_t * A2_t / s_t",
        ),
    }
    if spec.has_vn_regular:
        view = spec.vn_regular()
        rate = ensemble.design_rate(view)
        curve = growth.find_critical_ratio(view)
        block: Dict[str, Any] = {
            "q": view.q,
            "design_rate": _tagged(rate, "1 - q * (1 - sum_t rho_t k_t / s_t)"),
            "critical_ratio": _tagged(
                curve.critical_ratio,
                "smallest positive root of the weight-spectrum growth rate",
            ),
            "verdict": curve.verdict,
            "root_located": curve.root_located,
        }
        if rate < 0:
            block["warning_negative_rate"] = True
        report["vn_regular"] = block
    if spec.has_unstructured:
        view2 = spec.unstructured()
        ub = bounds.min_distance_prob_bound(view2)
        report["unstructured"] = {
            "degree_two_edge_fraction": _tagged(
                ensemble.degree_two_edge_fraction(view2), "lambda'(0) = lambda_2"
            ),
            "prob_min_distance_one": _tagged(
                bounds.prob_min_distance_one(view2),
                "1 - exp(-lambda'(0) * weight2_density / 2)",
            ),
            "min_distance_prob_bound": {
                "value": ub.value,
                "vacuous": ub.vacuous,
                "product": ub.product,
                "formula": "1 / sqrt(1 - lambda'(0) * weight2_density) - 1",
            },
        }
    return report


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    report = _analyze_report(spec)
    _write_text(args.out, json.dumps(report, indent=2) + "\n")
    return 0


def _parse_grid(text: str) -> List[Fraction]:
    try:
        a_s, b_s, step_s = text.split(":")
        a, b, step = (ensemble.to_fraction(x) for x in (a_s, b_s, step_s))
    except ValueError as exc:
        raise SpecFileError(f"--gamma-grid: expected 'a:b:step', got {text!r}") from exc
    if step <= 0 or b < a:
        raise SpecFileError(f"--gamma-grid: need a <= b and step > 0, got {text!r}")
    grid = []
    g = a
    while g <= b:
        grid.append(g)
        g += step
    return grid


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    if len(spec.mixture.types) != 2:
        raise SpecFileError(
            f"sweep needs exactly 2 CN types, spec has {len(spec.mixture.types)}"
        )
    view = spec.vn_regular()
    if spec.has_unstructured:
        print("notice: ignoring the spec's 'lambda' block for sweep", file=sys.stderr)
    grid = _parse_grid(args.gamma_grid)
    points = growth.two_type_sweep(
        spec.mixture.types[0], spec.mixture.types[1], view.q, grid,
        threads=_env_threads(),
    )
    lines = ["gamma1,rho1,design_rate,critical_ratio,verdict,delta_gv"]
    for p in points:
        lines.append(
            ",".join([
                _fmt(p.gamma1), _fmt(p.rho1), _fmt(p.rate),
                _fmt(p.critical_ratio), p.verdict, _fmt(p.delta_gv),
            ])
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _select_view(spec: SpecFile, flag: Optional[str]):
    if flag == "vn-regular" or (flag is None and not spec.has_unstructured):
        view = spec.vn_regular()
    elif flag == "unstructured" or (flag is None and not spec.has_vn_regular):
        view = spec.unstructured()
    else:
        raise SpecFileError(
            "spec has both 'q' and 'lambda'; pick one with "
            "--ensemble {vn-regular,unstructured}"
        )
    if spec.has_vn_regular and spec.has_unstructured:
        other = "lambda" if isinstance(view, ensemble.VnRegularEnsemble) else "q"
        print(f"notice: ignoring the spec's {other!r} block for sample",
              file=sys.stderr)
    return view


def cmd_sample(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    view = _select_view(spec, args.ensemble)
    stats = sampler.estimate_dmin_stats(
        view, args.n, args.trials, args.alpha, args.seed,
        threads=_env_threads(),
    )
    measurable = stats.trials - stats.count_k_over_limit
    record: Dict[str, Any] = {
        "ensemble": sampler.VN_REGULAR
        if isinstance(view, ensemble.VnRegularEnsemble) else sampler.UNSTRUCTURED,
        "n": stats.n,
        "trials": stats.trials,
        "seed": stats.seed,
        "threshold_alpha": stats.threshold_alpha,
        "threshold_d": stats.threshold_d,
        "count_eq_one": stats.count_eq_one,
        "frac_eq_one": stats.count_eq_one / stats.trials,
        "wilson_ci_eq_one": list(stats.wilson_ci_eq_one),
        "count_le_threshold": stats.count_le_threshold,
        "frac_le_threshold": (
            stats.count_le_threshold / measurable if measurable else None
        ),
        "wilson_ci_le_threshold": list(stats.wilson_ci_le_threshold),
        "count_k_over_limit": stats.count_k_over_limit,
    }
    warnings: List[str] = []
    if isinstance(view, ensemble.VnRegularEnsemble):
        curve = growth.find_critical_ratio(view)
        record["reference"] = {
            "critical_ratio": curve.critical_ratio,
            "verdict": curve.verdict,
        }
        if curve.critical_ratio is None or args.alpha > curve.critical_ratio:
            warnings.append(
                "threshold alpha exceeds the critical ratio; the vanishing "
                "guarantee does not cover this threshold"
            )
    else:
        ub = bounds.min_distance_prob_bound(view)
        record["reference"] = {
            "prob_min_distance_one": bounds.prob_min_distance_one(view),
            "min_distance_prob_bound": ub.value,
            "min_distance_prob_bound_vacuous": ub.vacuous,
        }
    record["warnings"] = warnings
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write_text(args.out, json.dumps(record, indent=2) + "\n")
    return 0


def cmd_coef_convergence(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec)
    view = spec.unstructured()
    if spec.has_vn_regular:
        print("notice: ignoring the spec's 'q' block for coef-convergence",
              file=sys.stderr)
    if args.j < 1:
        raise SpecFileError(f"--j must be a positive integer, got {args.j}")
    try:
        n_list = [int(x) for x in args.n_list.split(",") if x]
    except ValueError as exc:
        raise SpecFileError("--n-list: expected comma-separated integers") from exc
    rows = bounds.even_coef_convergence(view, args.j, n_list)
    lines = ["n,cn_total,edges,j,exact_coef,limit_value,ratio"]
    for r in rows:
        ratio = "" if math.isnan(r.ratio) else _fmt(r.ratio)
        lines.append(
            f"{r.n},{r.cn_total},{r.edges},{r.j},{r.exact_coef},"
            f"{_fmt(r.limit_value)},{ratio}"
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gldpc",
        description="Minimum-distance analysis of irregular GLDPC code ensembles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="derived parameters and verdicts as JSON")
    p.add_argument("spec")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="two-type mixture sweep as CSV")
    p.add_argument("spec")
    p.add_argument("--gamma-grid", default="0:1:0.05", help="a:b:step node fractions")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sample", help="Monte Carlo minimum-distance statistics")
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True, help="block length")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True,
                   help="relative distance threshold")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ensemble", choices=["vn-regular", "unstructured"],
                   default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "coef-convergence",
        help="exact vs limiting small-weight coefficients as CSV",
    )
    p.add_argument("spec")
    p.add_argument("--j", type=int, required=True, help="half the target weight")
    p.add_argument("--n-list", required=True, help="comma-separated block lengths")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_coef_convergence)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecFileError, DivisibilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
