"""Command-line interface.

Exit codes: 0 on success (a found counterexample or violation is a
successful finding), 2 on input errors, 3 on internal numeric failures.
Tables print floats at 6 significant digits; JSON output carries full
double precision and is byte-identical for identical config and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import aggregate as agg
from . import choice_theory as ct
from . import figures, lorenz, measures, preorder, rank_weighted, search
from .core import UtilityProfile, parse_profile
from .errors import InvalidParams, WelfareError

PROG = "welfare-lab"


def _fmt(x: float) -> str:
    return format(x, ".6g")


def _parse_any(text: str) -> UtilityProfile:
    stripped = text.strip()
    fmt = "json_array" if stripped.startswith("[") else "csv_row"
    return parse_profile(stripped, fmt)


def _read_profile(inline: str | None, path: str | None, what: str = "profile") -> UtilityProfile:
    if (inline is None) == (path is None):
        raise InvalidParams(f"give exactly one of an inline {what} or a {what} file")
    if inline is not None:
        return _parse_any(inline)
    return _parse_any(Path(path).read_text(encoding="utf-8"))


def _descriptor_from_args(args: argparse.Namespace, name: str | None = None) -> measures.MeasureDescriptor:
    if name is None:
        name = args.measure
    if name == "atkinson":
        if args.eps is None:
            raise InvalidParams("atkinson needs --eps")
        return measures.descriptor(name, epsilon=args.eps)
    if name == "fairness_power":
        if args.beta is None or args.r is None:
            raise InvalidParams("fairness_power needs --beta and --r")
        return measures.descriptor(name, beta=args.beta, r=args.r)
    if name == "fairness_log":
        if args.r is None:
            raise InvalidParams("fairness_log needs --r")
        return measures.descriptor(name, r=args.r)
    return measures.descriptor(name)


def _table(rows: Sequence[Sequence[str]], header: Sequence[str] | None = None) -> str:
    all_rows = ([list(header)] if header else []) + [list(r) for r in rows]
    if not all_rows:
        return ""
    widths = [max(len(r[i]) for r in all_rows) for i in range(len(all_rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in all_rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(rows: Sequence[Sequence[object]], header: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _json(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


# --- command handlers -------------------------------------------------------


def _cmd_measure(args: argparse.Namespace) -> str:
    prof = _read_profile(args.profile, args.file)
    d = _descriptor_from_args(args)
    value = measures.evaluate_measure(d, prof)
    if args.format == "json":
        return _json({"measure": d.to_json(), "profile": list(prof.values), "value": value})
    if args.format == "csv":
        return _csv([[d.name, repr(value)]], header=["measure", "value"])
    return _fmt(value)


_RANK_EXTRA = ("sum", "irbd", "ulbd")


def _rank_evaluator(args: argparse.Namespace) -> tuple[str, Callable[[UtilityProfile], float], bool]:
    name = args.by
    if name == "sum":
        return name, agg.f_util, True
    if name in ("irbd", "ulbd"):
        if args.k is None:
            raise InvalidParams(f"{name} needs --k")
        fn = rank_weighted.w_irbd if name == "irbd" else rank_weighted.w_ulbd
        return name, (lambda p: fn(p, args.k)), True
    d = _descriptor_from_args(args, name)
    higher = d.orientation == "higher_better"
    return name, (lambda p: measures.evaluate_measure(d, p)), higher


def _cmd_rank(args: argparse.Namespace) -> str:
    profiles = [_parse_any(text) for text in args.profile or []]
    for path in args.file or []:
        profiles.append(_parse_any(Path(path).read_text(encoding="utf-8")))
    if len(profiles) < 2:
        raise InvalidParams("ranking needs at least two profiles")
    name, fn, higher = _rank_evaluator(args)
    tiers = preorder.rank_by_function(profiles, fn, higher_is_better=higher)
    if args.format == "json":
        return _json(
            {
                "by": name,
                "higher_is_better": higher,
                "tiers": [
                    {"rank": t.rank, "value": t.value, "labels": list(t.labels)} for t in tiers
                ],
            }
        )
    rows = [[str(t.rank), ", ".join(t.labels), _fmt(t.value)] for t in tiers]
    if args.format == "csv":
        return _csv(
            [[t.rank, ";".join(t.labels), repr(t.value)] for t in tiers],
            header=["rank", "labels", "value"],
        )
    return _table(rows, header=["rank", "profiles", name])


def _cmd_lorenz(args: argparse.Namespace) -> str:
    profiles = [_parse_any(text) for text in args.profile or []]
    for path in args.file or []:
        profiles.append(_parse_any(Path(path).read_text(encoding="utf-8")))
    if not profiles:
        raise InvalidParams("give at least one profile")
    labeled = []
    for i, p in enumerate(profiles):
        label = p.label or f"P{i + 1}"
        labeled.append((label, lorenz.lorenz_from_profile(p)))
    verdict = None
    if len(labeled) == 2:
        verdict = lorenz.lorenz_dominates(labeled[0][1], labeled[1][1])
    if args.figure:
        figures.lorenz_figure(labeled, args.figure)
        _note(f"figure written: {args.figure}")
    if args.format == "json":
        return _json(
            {
                "curves": [
                    {"label": name, "knots": c.to_json(), "gini": lorenz.gini_from_lorenz(c)}
                    for name, c in labeled
                ],
                "dominance": verdict,
            }
        )
    if args.format == "csv":
        rows = [
            [name, repr(u), repr(l)] for name, c in labeled for u, l in c.knots
        ]
        return _csv(rows, header=["label", "u", "l"])
    parts = []
    for name, c in labeled:
        parts.append(f"{name}: gini = {_fmt(lorenz.gini_from_lorenz(c))}")
        parts.append(_table([[_fmt(u), _fmt(l)] for u, l in c.knots], header=["u", "L(u)"]))
    if verdict is not None:
        parts.append(f"dominance: {verdict}")
    return "\n".join(parts)


def _cmd_aggregate(args: argparse.Namespace) -> str:
    prof = _read_profile(args.profile, args.file)
    spec = agg.AggregateSpec(egal_measure=_descriptor_from_args(args), penalty_weight=args.lam)
    util = agg.f_util(prof)
    egal = agg.f_egal(prof, spec)
    value = agg.f_aggregate(prof, spec)
    payload = {
        "spec": spec.to_json(),
        "profile": list(prof.values),
        "f_util": util,
        "f_egal": egal,
        "f_aggregate": value,
        "mean_utility": prof.mean(),
    }
    if args.format == "json":
        return _json(payload)
    if args.format == "csv":
        return _csv(
            [[repr(util), repr(egal), repr(value), repr(prof.mean())]],
            header=["f_util", "f_egal", "f_aggregate", "mean_utility"],
        )
    return _table(
        [
            ["f_util", _fmt(util)],
            ["f_egal", _fmt(egal)],
            ["f_aggregate", _fmt(value)],
            ["mean_utility", _fmt(prof.mean())],
        ]
    )


def _cmd_audit(args: argparse.Namespace) -> str:
    spec = agg.AggregateSpec(egal_measure=_descriptor_from_args(args), penalty_weight=args.lam)
    config = agg.AuditConfig(
        seed=args.seed,
        samples=args.samples,
        size_range=(args.n_min, args.n_max),
        value_range=(args.low, args.high),
    )
    report = agg.monotonicity_audit(spec, config)
    if args.format == "json":
        return _json(report.to_json())
    if args.format == "csv":
        rows = [
            [";".join(repr(x) for x in v.profile), v.index, repr(v.delta), repr(v.before), repr(v.after)]
            for v in report.violations
        ]
        return _csv(rows, header=["profile", "index", "delta", "before", "after"])
    lines = [
        f"samples: {report.samples}  triples: {report.triples}",
        f"violations: {len(report.violations)}{' (truncated)' if report.truncated else ''}",
        f"derivative sign mismatches: {report.derivative_sign_mismatches}",
    ]
    v = report.first_violation
    if v is not None:
        lines.append(
            "first violation: profile=("
            + ", ".join(_fmt(x) for x in v.profile)
            + f") index={v.index} delta={_fmt(v.delta)} before={_fmt(v.before)} after={_fmt(v.after)}"
        )
    else:
        lines.append("monotone on every sampled bump")
    return "\n".join(lines)


def _cmd_reversal(args: argparse.Namespace) -> str:
    pa = _read_profile(args.a, args.a_file, what="profile a")
    pb = _read_profile(args.b, args.b_file, what="profile b")
    spec = agg.AggregateSpec(egal_measure=_descriptor_from_args(args), penalty_weight=args.lam)
    grid = search.ScaleGrid(t_min=args.t_min, t_max=args.t_max, points=args.points)
    witness = search.find_scale_reversal(pa, pb, spec, grid)
    if args.figure:
        rows = search.reversal_sweep(pa, pb, spec, grid)
        figures.reversal_figure(
            rows, args.figure, witness_scale=witness.scale if witness else None
        )
        _note(f"figure written: {args.figure}")
    if args.format == "json":
        return _json(
            {
                "spec": spec.to_json(),
                "grid": {"t_min": grid.t_min, "t_max": grid.t_max, "points": grid.points},
                "witness": witness.to_json() if witness else None,
            }
        )
    if args.format == "csv":
        rows = search.reversal_sweep(pa, pb, spec, grid)
        return _csv(
            [[repr(t), repr(fa), repr(fb), order] for t, fa, fb, order in rows],
            header=["t", "f_a", "f_b", "ordering"],
        )
    if witness is None:
        return "no ordering flip on the sweep grid"
    return "\n".join(
        [
            f"ordering flips at t = {_fmt(witness.scale)}",
            f"at t = 1: F(a) = {_fmt(witness.f_a_base)}, F(b) = {_fmt(witness.f_b_base)} ({witness.before})",
            f"at t = {_fmt(witness.scale)}: F(a) = {_fmt(witness.f_a_scaled)}, "
            f"F(b) = {_fmt(witness.f_b_scaled)} ({witness.after})",
        ]
    )


def _cmd_collapse(args: argparse.Namespace) -> str:
    pa = _read_profile(args.a, args.a_file, what="profile a")
    pb = _read_profile(args.b, args.b_file, what="profile b")
    report = search.demonstrate_irbd_collapse(pa, pb, args.k, lambda_max=args.lambda_max)
    if args.figure:
        figures.collapse_figure(report, args.figure)
        _note(f"figure written: {args.figure}")
    if args.format == "json":
        return _json(report.to_json())
    if args.format == "csv":
        return _csv(
            [[r.lam, repr(r.w_a), repr(r.w_b), r.ordering] for r in report.rungs],
            header=["lambda", "w_a", "w_b", "ordering"],
        )
    rows = [[str(r.lam), _fmt(r.w_a), _fmt(r.w_b), r.ordering] for r in report.rungs]
    lines = [
        _table(rows, header=["lambda", "w_a", "w_b", "ordering"]),
        f"analytic limits: a -> {_fmt(report.limit_a)}, b -> {_fmt(report.limit_b)}",
        f"initial ordering: {report.initial_ordering}; limit ordering: {report.target_ordering}",
        (
            f"crossover at lambda = {report.crossover_lambda}"
            if report.crossover_lambda is not None
            else "no crossover on the tested ladder"
        ),
    ]
    return "\n".join(lines)


def _cmd_ulbd(args: argparse.Namespace) -> str:
    construction = search.build_ulbd_construction(args.n_total, args.m_levels, args.k)
    threshold = search.anomaly_threshold_m(args.k)
    if args.figure:
        figures.ulbd_figure(construction, args.figure)
        _note(f"figure written: {args.figure}")
    if args.format == "json":
        payload = construction.to_json()
        payload["threshold_m"] = threshold
        return _json(payload)
    if args.format == "csv":
        rows = [
            ["a", repr(lvl), c]
            for lvl, c in zip(construction.dist_a.levels, construction.dist_a.counts)
        ] + [
            ["b", repr(lvl), c]
            for lvl, c in zip(construction.dist_b.levels, construction.dist_b.counts)
        ]
        return _csv(rows, header=["distribution", "level", "count"])
    return "\n".join(
        [
            f"w_a = {_fmt(construction.w_a)}  w_b = {_fmt(construction.w_b)}",
            f"total_a = {_fmt(construction.total_a)}  total_b = {_fmt(construction.total_b)}",
            f"gini_a = {_fmt(construction.gini_a)}  gini_b = {_fmt(construction.gini_b)}",
            f"anomaly: {'holds' if construction.anomaly else 'does not hold'}",
            f"limit threshold m for k = {construction.k:g}: {threshold}",
        ]
    )


def _cmd_preorder(args: argparse.Namespace) -> str:
    if (args.table is None) == (args.table_json is None):
        raise InvalidParams("give exactly one of --table or --table-json")
    text = args.table_json or Path(args.table).read_text(encoding="utf-8")
    table = preorder.RelationTable.from_json(text)
    report = preorder.check_preorder(table)
    if args.format == "json":
        return _json(report.to_json())
    if args.format == "csv":
        return _csv(
            [[" > ".join(c + c[:1])] for c in report.cycles], header=["strict_cycle"]
        )
    lines = [
        f"reflexive: {'ok' if report.reflexive_ok else 'missing self-judgments'}",
        f"complete: {'ok' if report.complete_ok else 'missing pairs: ' + str(list(report.missing_pairs))}",
    ]
    if report.cycles:
        lines.append(f"strict cycles ({len(report.cycles)}{', truncated' if report.truncated else ''}):")
        lines.extend("  " + " > ".join(c + c[:1]) for c in report.cycles)
    else:
        lines.append("no strict cycles")
    return "\n".join(lines)


def _cmd_trolley(args: argparse.Namespace) -> str:
    scenarios = ct.scenarios_from_json(Path(args.scenarios).read_text(encoding="utf-8"))
    rule = ct.ThresholdRule(cutoff=args.cutoff, risk_basis=args.risk_basis)
    report = ct.threshold_rule_audit(rule, scenarios)
    if args.format == "json":
        return _json(report.to_json())
    if args.format == "csv":
        rows = [
            [
                i,
                r.scenario.group_size,
                repr(r.scenario.p),
                repr(r.scenario.eps1),
                repr(r.scenario.q),
                repr(r.scenario.eps2),
                r.permitted,
                repr(r.delta),
            ]
            for i, r in enumerate(report.rows)
        ]
        return _csv(
            rows,
            header=["index", "group_size", "p", "eps1", "q", "eps2", "permitted", "delta"],
        )
    rows = [
        [
            str(i),
            str(r.scenario.group_size),
            _fmt(r.scenario.p),
            _fmt(r.scenario.eps1),
            _fmt(r.scenario.q),
            _fmt(r.scenario.eps2),
            "yes" if r.permitted else "no",
            _fmt(r.delta),
        ]
        for i, r in enumerate(report.rows)
    ]
    lines = [
        _table(rows, header=["#", "group", "p", "eps1", "q", "eps2", "permitted", "delta"]),
    ]
    if report.inversions:
        lines.append("inversions (permitted i vs forbidden j with more benefit):")
        lines.extend(f"  permits #{i} but forbids #{j}" for i, j in report.inversions)
    else:
        lines.append("no inversions")
    return "\n".join(lines)


# --- parser -----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, figure: bool = False) -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    if figure:
        p.add_argument("--figure", help="also render a figure to this path")


def _add_measure_flags(p: argparse.ArgumentParser, default: str | None = None) -> None:
    p.add_argument(
        "--measure",
        choices=measures.MEASURE_NAMES,
        required=default is None,
        default=default,
    )
    p.add_argument("--eps", type=float, default=None, help="atkinson aversion parameter")
    p.add_argument("--beta", type=float, default=None, help="fairness generator exponent")
    p.add_argument("--r", type=float, default=None, help="fairness population exponent")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Inequality measures, Lorenz machinery, rank-discounted welfare, and counterexample searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="evaluate one measure on one profile")
    p.add_argument("--profile", help="inline JSON array or CSV row")
    p.add_argument("--file", help="profile file (JSON array or CSV row)")
    _add_measure_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("rank", help="rank profiles by an evaluator")
    p.add_argument("--profile", action="append", help="inline profile, repeatable")
    p.add_argument("--file", action="append", help="profile file, repeatable")
    p.add_argument("--by", choices=_RANK_EXTRA + measures.MEASURE_NAMES, default="sum")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--k", type=float, default=None, help="discount factor for irbd/ulbd")
    _add_common(p)
    p.set_defaults(handler=_cmd_rank, measure=None)

    p = sub.add_parser("lorenz", help="Lorenz curve knots and gini, plus dominance verdicts")
    p.add_argument("--profile", action="append", help="inline profile, repeatable")
    p.add_argument("--file", action="append", help="profile file, repeatable")
    _add_common(p, figure=True)
    p.set_defaults(handler=_cmd_lorenz)

    p = sub.add_parser("aggregate", help="penalized aggregate of one profile")
    p.add_argument("--profile", help="inline JSON array or CSV row")
    p.add_argument("--file", help="profile file")
    _add_measure_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_aggregate)

    p = sub.add_parser("audit", help="coordinate-bump monotonicity audit")
    _add_measure_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=600)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--low", type=float, default=0.1)
    p.add_argument("--high", type=float, default=10.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("reversal", help="hunt a scale flip of the aggregate ordering")
    p.add_argument("--a", help="inline profile a")
    p.add_argument("--b", help="inline profile b")
    p.add_argument("--a-file", help="profile a file")
    p.add_argument("--b-file", help="profile b file")
    _add_measure_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--t-min", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=1e3)
    p.add_argument("--points", type=int, default=121)
    _add_common(p, figure=True)
    p.set_defaults(handler=_cmd_reversal)

    p = sub.add_parser("collapse", help="replication collapse of rank-discounted welfare")
    p.add_argument("--a", help="inline profile a")
    p.add_argument("--b", help="inline profile b")
    p.add_argument("--a-file", help="profile a file")
    p.add_argument("--b-file", help="profile b file")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--lambda-max", type=int, default=1024)
    _add_common(p, figure=True)
    p.set_defaults(handler=_cmd_collapse)

    p = sub.add_parser("ulbd", help="two-level vs uniform-ladder anomaly construction")
    p.add_argument("--n-total", type=int, required=True)
    p.add_argument("--m-levels", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    _add_common(p, figure=True)
    p.set_defaults(handler=_cmd_ulbd)

    p = sub.add_parser("preorder", help="consistency check of a judgment table")
    p.add_argument("--table", help="relation table JSON file")
    p.add_argument("--table-json", help="inline relation table JSON")
    _add_common(p)
    p.set_defaults(handler=_cmd_preorder)

    p = sub.add_parser("trolley", help="threshold-rule audit of rescue scenarios")
    p.add_argument("--scenarios", required=True, help="JSON list of scenario objects")
    p.add_argument("--cutoff", type=float, default=0.2)
    p.add_argument("--risk-basis", choices=("total", "increase"), default="total")
    _add_common(p)
    p.set_defaults(handler=_cmd_trolley)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.handler(args)
    except WelfareError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    _emit(args, output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
