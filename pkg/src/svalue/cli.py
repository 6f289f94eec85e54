"""Command-line front end: convert, combine, calibrate, curve, simulate.

Output goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 I/O
failure, 2 usage or domain error. JSON output is strict (no NaN/Infinity
literals; unrepresentable values become nulls plus notes) with full-precision
numbers; tables round to 4 significant figures.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Any

from .calibrate import calibration_report
from .combine import (
    SchemaError,
    compare_methods,
    pooled_homogeneity_test,
    s_summation_test,
    studies_from_csv,
    z_squared_test,
)
from .curves import EstimateSpec, curve
from .simulate import LOW_N, RngSpec, simulate_exact_binomial, simulate_uniform_p
from .specfun import ConvergenceError
from .units import (
    InfoUnit,
    PValue,
    SValue,
    coin_toss_gauge,
    convert,
    from_surprisal,
    surprisal,
    two_sided_to_sigma,
)

CSV_DIALECT = {"delimiter": ",", "lineterminator": "\n"}


def _sanitize(value: Any, key: str, notes: list[str]) -> Any:
    """Replace non-finite floats with None, explaining why in notes."""
    if isinstance(value, float) and not math.isfinite(value):
        notes.append(f"{key} is not representable in JSON ({value!r}) and was set to null")
        return None
    if isinstance(value, dict):
        return {k: _sanitize(v, f"{key}.{k}", notes) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v, f"{key}[{i}]", notes) for i, v in enumerate(value)]
    return value


def _emit_json(payload: dict) -> None:
    notes = list(payload.pop("notes", ()))
    clean = {k: _sanitize(v, k, notes) for k, v in payload.items()}
    clean["notes"] = notes
    print(json.dumps(clean, allow_nan=False))


def _fmt_table(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.4g}"
    return str(value)


def _flatten(payload: dict, prefix: str = "") -> list[tuple[str, Any]]:
    rows: list[tuple[str, Any]] = []
    for k, v in payload.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows.extend(_flatten(v, f"{key}."))
        else:
            rows.append((key, v))
    return rows


def _emit_table(payload: dict) -> None:
    notes = list(payload.pop("notes", ()))
    rows = _flatten(payload)
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k.ljust(width)}  {_fmt_table(v)}")
    for note in notes:
        print(f"note: {note}", file=sys.stderr)


def _emit_csv(payload: dict) -> None:
    payload = dict(payload)
    payload.pop("notes", None)
    rows = _flatten(payload)
    writer = csv.writer(sys.stdout, **CSV_DIALECT)
    writer.writerow([k for k, _ in rows])
    writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for _, v in rows])


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        _emit_json(payload)
    elif fmt == "csv":
        _emit_csv(payload)
    else:
        _emit_table(payload)


def _svalue_fields(s: SValue) -> dict:
    return {
        "s_bits": convert(s, InfoUnit.BITS).value,
        "s_nats": convert(s, InfoUnit.NATS).value,
        "s_dits": convert(s, InfoUnit.DITS).value,
    }


def cmd_convert(args: argparse.Namespace) -> None:
    if (args.p is None) == (args.s is None):
        raise ValueError("give exactly one of --p or --s (with --from-unit)")
    notes: list[str] = []
    if args.p is not None:
        p = PValue(args.p)
        s = surprisal(p, InfoUnit.NATS)
    else:
        s = SValue(args.s, InfoUnit.from_name(args.from_unit))
        p = from_surprisal(s)
    payload: dict[str, Any] = {"p": p.value}
    payload.update(_svalue_fields(s))
    payload["coin_tosses"] = coin_toss_gauge(p)
    if p.value == 1.0:
        payload["sigma"] = None
        notes.append("sigma is undefined at p = 1 (the one-sided cutoff is -infinity)")
    else:
        payload["sigma"] = two_sided_to_sigma(p)
    payload["notes"] = notes
    _emit(payload, args.format)


def _combine_payload(args: argparse.Namespace) -> dict:
    studies = studies_from_csv(args.input)
    p_form = studies[0].has_p
    method = args.method
    if method == "s-sum":
        if not p_form:
            raise SchemaError("method s-sum requires columns id,p; the input carries id,estimate,std_error")
        rep = s_summation_test(studies)
        return {
            "method": "s-sum",
            "k": rep.k,
            "s_plus_nats": rep.s_plus.value,
            "df": rep.df,
            "p_summary": rep.p_summary,
            "s_summary_nats": rep.s_summary.value,
            "expected_noise_nats": rep.expected_noise_nats,
            "shrinkage_nats": rep.shrinkage_nats,
        }
    if p_form:
        raise SchemaError(
            f"method {method} requires columns id,estimate,std_error; the input carries id,p"
        )
    if method == "z2":
        z_scores = [(st.estimate - args.null) / st.std_error for st in studies]
        zrep = z_squared_test(z_scores)
        return {
            "method": "z2",
            "k": zrep.k,
            "statistic": zrep.statistic,
            "df": zrep.df,
            "p_summary": zrep.p_summary,
            "s_summary_nats": zrep.s_summary.value,
            "notes": [zrep.df_caveat],
        }
    if method == "pooled":
        prep = pooled_homogeneity_test(studies, args.null)
        return {
            "method": "pooled",
            "k": prep.k,
            "pooled_estimate": prep.pooled_estimate,
            "pooled_se": prep.pooled_se,
            "z": prep.z,
            "p_two_sided": prep.p_two_sided,
            "s_summary_nats": prep.s_summary.value,
            "df": prep.df,
        }
    cmp_ = compare_methods(studies, args.null)
    return {
        "method": "compare",
        "k": cmp_.s_summation.k,
        "s_summation": {
            "s_plus_nats": cmp_.s_summation.s_plus.value,
            "df": cmp_.s_summation.df,
            "p_summary": cmp_.s_summation.p_summary,
            "s_summary_nats": cmp_.s_summation_nats,
        },
        "pooled": {
            "pooled_estimate": cmp_.pooled.pooled_estimate,
            "pooled_se": cmp_.pooled.pooled_se,
            "z": cmp_.pooled.z,
            "p_summary": cmp_.pooled.p_two_sided,
            "s_summary_nats": cmp_.pooled_nats,
            "df": cmp_.pooled.df,
        },
        "difference_nats": cmp_.difference_nats,
    }


def cmd_combine(args: argparse.Namespace) -> None:
    _emit(_combine_payload(args), args.format)


def cmd_calibrate(args: argparse.Namespace) -> None:
    rep = calibration_report(PValue(args.p), args.d)
    payload = {
        "p": rep.p,
        "d": rep.df_d,
        "mlr": rep.mlr,
        "deviance": rep.deviance,
        "aic_delta": rep.aic_delta,
        "bf_lower_bound": rep.bf_lower_bound,
        "odds_increase_bound": rep.odds_increase_bound,
        "conditional_type1": rep.conditional_type1,
        "notes": list(rep.notes),
    }
    _emit(payload, args.format)


CURVE_COLUMNS = ("mu1", "p_ge", "p_le", "s_le", "p_two", "s_two")


def cmd_curve(args: argparse.Namespace) -> None:
    spec = EstimateSpec(args.estimate, args.se)
    unit = InfoUnit.from_name(args.unit)
    points = curve(spec, args.from_, args.to, args.steps, unit)
    if args.format == "json":
        rows = [
            {
                "mu1": pt.mu1,
                "p_ge": pt.p_ge,
                "p_le": pt.p_le,
                "s_le": pt.s_le.value,
                "p_two": pt.p_two,
                "s_two": pt.s_two.value,
                "unit": unit.value,
            }
            for pt in points
        ]
        print(json.dumps(rows, allow_nan=False))
        return
    writer = csv.writer(sys.stdout, **CSV_DIALECT)
    writer.writerow(CURVE_COLUMNS)
    for pt in points:
        writer.writerow(
            [repr(v) for v in (pt.mu1, pt.p_ge, pt.p_le, pt.s_le.value, pt.p_two, pt.s_two.value)]
        )


def cmd_simulate(args: argparse.Namespace) -> None:
    alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    rng = RngSpec(args.seed, args.stream)
    if args.generator == "uniform":
        summary = simulate_uniform_p(args.n, rng, alphas)
    else:
        if args.trials is None or args.theta0 is None:
            raise ValueError("--generator binomial requires --trials and --theta0")
        summary = simulate_exact_binomial(args.n, args.trials, args.theta0, rng, alphas)
    payload = {
        "generator": args.generator,
        "n": summary.n,
        "seed": args.seed,
        "stream": args.stream,
        "mean_s_nats": summary.mean_s_nats,
        "mean_s_bits": summary.mean_s_bits,
        "se_of_mean": summary.se_of_mean,
        "empirical_type1": {repr(a): r for a, r in summary.empirical_type1.items()},
        "dominance_violations": summary.dominance_violations,
        "low_n": summary.low_n,
    }
    if args.generator == "binomial":
        payload["trials"] = args.trials
        payload["theta0"] = args.theta0
    notes = []
    if summary.low_n:
        notes.append(f"n = {summary.n} is below {LOW_N}; summary statistics are unreliable")
    payload["notes"] = notes
    _emit_json(payload)  # simulation output is always machine-stable JSON


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "table"), default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--unit", choices=("bits", "nats", "dits"), default="bits",
        help="information unit for curve output (default: bits)",
    )

    parser = argparse.ArgumentParser(
        prog="svalue",
        description="Surprisal-based statistical inference toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_conv = sub.add_parser("convert", parents=[common], help="P-value <-> S-value conversions")
    p_conv.add_argument("--p", type=float, help="P-value in (0, 1]")
    p_conv.add_argument("--s", type=float, help="S-value magnitude (requires --from-unit)")
    p_conv.add_argument("--from-unit", choices=("bits", "nats", "dits"), default="bits",
                        help="unit of --s (default: bits)")
    p_conv.set_defaults(func=cmd_convert)

    p_comb = sub.add_parser("combine", parents=[common], help="combine evidence across studies")
    p_comb.add_argument("--input", required=True, help="CSV with id,p or id,estimate,std_error")
    p_comb.add_argument("--method", choices=("s-sum", "z2", "pooled", "compare"),
                        default="s-sum")
    p_comb.add_argument("--null", type=float, default=0.0,
                        help="null value for effect-form methods (default: 0)")
    p_comb.set_defaults(func=cmd_combine)

    p_cal = sub.add_parser("calibrate", parents=[common], help="calibrate one P-value")
    p_cal.add_argument("--p", type=float, required=True)
    p_cal.add_argument("--d", type=int, default=1, help="restriction dimension (default: 1)")
    p_cal.set_defaults(func=cmd_calibrate)

    p_curve = sub.add_parser("curve", parents=[common], help="P-/S-value curve over a grid")
    p_curve.add_argument("--estimate", type=float, required=True)
    p_curve.add_argument("--se", type=float, required=True)
    p_curve.add_argument("--from", dest="from_", type=float, required=True)
    p_curve.add_argument("--to", type=float, required=True)
    p_curve.add_argument("--steps", type=int, required=True)
    p_curve.set_defaults(func=cmd_curve)

    p_sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo validity checks")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--stream", type=int, default=0)
    p_sim.add_argument("--alphas", default="0.01,0.05,0.1",
                       help="comma-separated alpha levels (default: 0.01,0.05,0.1)")
    p_sim.add_argument("--generator", choices=("uniform", "binomial"), default="uniform")
    p_sim.add_argument("--trials", type=int)
    p_sim.add_argument("--theta0", type=float)
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
