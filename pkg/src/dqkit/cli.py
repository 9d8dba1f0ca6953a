"""Command-line interface.

Subcommands: solve (optimal policy and expected value of a diagram), roc
(utility-driven ROC analysis of a scored CSV), choose (model investment
comparison over ROC reports), generate (synthetic widget-line data), serve
(HTTP API plus the browser explorer).

Exit codes: 0 success, 1 domain error (invalid model/data), 2 usage error.
Human-readable numeric output is fixed at 6 significant digits; --json files
carry full precision. DQKIT_LOG sets the log level.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import ingest, roc, solver
from .diagram import InvalidDiagramError, ModelFormatError, load_diagram, validate

log = logging.getLogger("dqkit")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _write_json(path: str, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_model(path: str):
    try:
        diagram = load_diagram(path)
    except FileNotFoundError:
        print(f"error: model file not found: {path}", file=sys.stderr)
        return None, 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return None, 2
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 1
    violations = validate(diagram)
    if violations:
        print("error: invalid model:", file=sys.stderr)
        for v in violations:
            print(f"  {v}", file=sys.stderr)
        return None, 1
    return diagram, 0


def cmd_solve(args) -> int:
    diagram, status = _load_model(args.model)
    if diagram is None:
        return status
    result = solver.solve(diagram)
    payload = solver.solve_result_to_dict(result)

    print(f"expected value: {_fmt(result.expected_value)}")
    if result.policy:
        print("policy:")
        unreachable = set(result.unreachable)
        for did in diagram.decision_order:
            informs = result.informs[did]
            for cfg, choice in result.policy[did].items():
                ctx = ", ".join(f"{n}={v}" for n, v in zip(informs, cfg))
                suffix = "  (unreachable)" if (did, cfg) in unreachable else ""
                if ctx:
                    print(f"  {did} [{ctx}]: {choice}{suffix}")
                else:
                    print(f"  {did}: {choice}{suffix}")

    if args.voi:
        if not diagram.decision_order:
            print("error: --voi needs a diagram with at least one decision", file=sys.stderr)
            return 1
        decision_id = diagram.decision_order[0]
        try:
            voi = solver.value_of_information(diagram, decision_id, args.voi)
        except (KeyError, ValueError, InvalidDiagramError) as exc:
            print(f"error: cannot compute value of information: {exc}", file=sys.stderr)
            return 1
        print(f"value of information for observing {args.voi} at {decision_id}: {_fmt(voi)}")
        payload["value_of_information"] = {
            "decision": decision_id,
            "observed": args.voi,
            "value": voi,
        }

    if args.json:
        _write_json(args.json, payload)
    return 0


def cmd_roc(args) -> int:
    try:
        data = ingest.load_scored_csv(args.scores)
    except FileNotFoundError:
        print(f"error: scores file not found: {args.scores}", file=sys.stderr)
        return 2
    except ingest.CsvFormatError as exc:
        print(f"error: {args.scores}: {exc}", file=sys.stderr)
        return 1
    if data.is_single_class:
        print("error: dataset has a single class; ROC analysis needs both", file=sys.stderr)
        return 1
    prevalence = args.p if args.p is not None else roc.empirical_prevalence(data)
    u = roc.UtilityModel(prevalence, args.v_tp, args.v_fp, args.v_tn, args.v_fn)
    curve = roc.build_roc(data)
    report = roc.analysis_report(curve, u, args.grid)

    print(f"{'threshold':>12} {'fpr':>10} {'tpr':>10} {'eu':>12}")
    for pt in curve.points:
        eu = roc.expected_utility(pt.fpr, pt.tpr, u)
        threshold = "+inf" if math.isinf(pt.threshold) else _fmt(pt.threshold)
        print(f"{threshold:>12} {_fmt(pt.fpr):>10} {_fmt(pt.tpr):>10} {_fmt(eu):>12}")
    opt = report["optimal"]
    threshold = "+inf" if opt["threshold"] is None else _fmt(opt["threshold"])
    print(f"optimal: threshold={threshold} fpr={_fmt(opt['fpr'])} tpr={_fmt(opt['tpr'])} "
          f"eu={_fmt(opt['expected_utility_per_case'])}")
    base = report["baseline"]
    print(f"baseline: {_fmt(base['value'])} ({base['which']})")
    line = report["indifference"]
    if line["slope"] is None:
        print("indifference line: vertical (v_tp equals v_fn)")
    else:
        print(f"indifference line: tpr = {_fmt(line['slope'])}*fpr + {_fmt(line['intercept'])}")

    if args.json:
        _write_json(args.json, report)
    return 0


def _parse_option_spec(spec: str) -> tuple[str, str, float]:
    name, sep, rest = spec.partition("=")
    path, sep2, cost_text = rest.rpartition(":")
    if not sep or not sep2 or not name or not path:
        raise ValueError(f"option spec must look like name=report.json:cost, got {spec!r}")
    try:
        cost = float(cost_text)
    except ValueError:
        raise ValueError(f"option {name!r}: cost {cost_text!r} is not a number") from None
    return name, path, cost


def cmd_choose(args) -> int:
    specs = []
    for spec in args.option or []:
        try:
            specs.append(_parse_option_spec(spec))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    baseline_per_case = 0.0
    option_values: list[tuple[str, float, float]] = []
    for idx, (name, path, cost) in enumerate(specs):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                report = json.load(fh)
        except FileNotFoundError:
            print(f"error: report file not found: {path}", file=sys.stderr)
            return 2
        except json.JSONDecodeError as exc:
            print(f"error: {path}: malformed JSON at line {exc.lineno} column {exc.colno}", file=sys.stderr)
            return 2
        try:
            per_case = float(report["optimal"]["expected_utility_per_case"])
            base = float(report["baseline"]["value"])
        except (KeyError, TypeError):
            print(f"error: {path}: not an ROC analysis report", file=sys.stderr)
            return 1
        if idx == 0:
            baseline_per_case = base
        option_values.append((name, per_case, cost))

    options: list[solver.OptionSpec] = [("status-quo", baseline_per_case * args.n_cases, 0.0)]
    for name, per_case, cost in option_values:
        options.append((name, per_case * args.n_cases, cost))
    try:
        choice = solver.choose_model(options)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(f"{'option':<20} {'net value':>14}")
    for name, net in choice.net_values.items():
        print(f"{name:<20} {_fmt(net):>14}")
    print(f"winner: {choice.chosen_option}")
    if args.json:
        _write_json(args.json, solver.investment_choice_to_dict(choice))
    return 0


def cmd_generate(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = ingest.WidgetLineConfig.from_json(fh.read())
    except FileNotFoundError:
        print(f"error: config file not found: {args.config}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: invalid generator config: {exc}", file=sys.stderr)
        return 2
    data = ingest.generate_widget_line(cfg)
    ingest.write_scored_csv(data, args.out)
    print(f"wrote {len(data.cases)} cases ({data.positive_count} positive) to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static_dir, cors_origins=tuple(args.cors_origin))
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: could not serve on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqkit", description="Decision-modelling toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an influence diagram model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--json", metavar="OUT", help="write the full-precision result JSON here ('-' for stdout)")
    p.add_argument("--voi", metavar="NODE", help="also report the value of the first decision observing NODE")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("roc", help="utility-driven ROC analysis of a scored CSV")
    p.add_argument("--scores", required=True, help="CSV file with header score,label")
    p.add_argument("--p", type=float, default=None,
                   help="prevalence of the positive class (default: empirical fraction)")
    p.add_argument("--v-tp", type=float, required=True, help="unit value of a true positive")
    p.add_argument("--v-fp", type=float, required=True, help="unit value of a false positive")
    p.add_argument("--v-tn", type=float, required=True, help="unit value of a true negative")
    p.add_argument("--v-fn", type=float, required=True, help="unit value of a false negative")
    p.add_argument("--grid", type=int, default=roc.DEFAULT_GRID_N, metavar="N",
                   help="utility field resolution (default %(default)s)")
    p.add_argument("--json", metavar="OUT", help="write the report JSON here ('-' for stdout)")
    p.set_defaults(func=cmd_roc)

    p = sub.add_parser("choose", help="compare model options by net value")
    p.add_argument("--option", action="append", metavar="NAME=REPORT.JSON:COST",
                   help="candidate option backed by an ROC report (repeatable)")
    p.add_argument("--n-cases", type=int, required=True, help="decision volume the options apply to")
    p.add_argument("--json", metavar="OUT", help="write the choice JSON here ('-' for stdout)")
    p.set_defaults(func=cmd_choose)

    p = sub.add_parser("generate", help="generate a synthetic widget-line dataset")
    p.add_argument("--config", required=True, help="generator config JSON")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("serve", help="serve the HTTP API and explorer UI")
    p.add_argument("--port", type=int, default=8720)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", default=None, help="directory of built explorer assets to serve at /")
    p.add_argument("--cors-origin", action="append", default=["*"], help="allowed CORS origin (repeatable)")
    p.set_defaults(func=cmd_serve)
    return parser


def _validate_args(parser: argparse.ArgumentParser, args) -> None:
    if args.command == "roc":
        if args.p is not None and not (0.0 < args.p < 1.0):
            parser.error("--p must be strictly inside (0, 1)")
        if args.grid < 2:
            parser.error("--grid must be at least 2")
    if args.command == "choose" and args.n_cases < 0:
        parser.error("--n-cases must be nonnegative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = os.environ.get("DQKIT_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.WARNING))
    _validate_args(parser, args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
