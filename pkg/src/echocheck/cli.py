"""Command-line front end.

Exit codes: 0 all checks passed / output produced; 1 violation found or
target unreachable; 2 usage or input error; 3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checker, netconfig
from .checker import StateBudgetExceeded, SweepEntry, SweepReport
from .netconfig import Config, ConfigShapeError
from .protocol import VARIANTS
from .render import report_text, trace_text

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="echocheck",
        description="Exhaustive checking of the Echo spanning-tree protocol "
                    "over all network configurations up to a size bound.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print a configuration count")
    p.add_argument("--universe", type=int, required=True,
                   help="number of available node identifiers")
    p.add_argument("--column", choices=("labeled", "canonical"), required=True,
                   help="labeled valuations or isomorphism classes")

    p = sub.add_parser("enumerate", help="list canonical configurations")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path, help="write the listing to a file")

    p = sub.add_parser("check", help="check a property on one or many configurations")
    p.add_argument("--property", choices=checker.PROPERTIES, required=True)
    p.add_argument("--variant", choices=VARIANTS, required=True)
    scope = p.add_mutually_exclusive_group(required=True)
    scope.add_argument("--max-nodes", type=int,
                       help="sweep all canonical configurations up to this size")
    scope.add_argument("--config", type=Path,
                       help="file with one configuration per line")
    p.add_argument("--out", type=Path,
                   help="write the JSON report here, plus CSV and figures")
    p.add_argument("--state-budget", type=int)
    p.add_argument("--symmetry", choices=("on", "off"), default="off",
                   help="quotient each search by the configuration's automorphisms")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock numbers for reproducible output")

    p = sub.add_parser("run", help="print a shortest run reaching a target predicate")
    p.add_argument("--config", type=Path, required=True,
                   help="file with exactly one configuration")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--target", choices=sorted(checker.TARGET_PREDICATES),
                   default="finish")
    p.add_argument("--max-steps", type=int, help="depth bound for the search")
    p.add_argument("--state-budget", type=int)
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("serve", help="start the interactive exploration service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", type=Path,
                   help="directory with the browser UI to serve at /")
    return parser


def _read_configs(path: Path) -> list[Config]:
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ConfigShapeError(f"cannot read {path}: {exc}") from None
    configs = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            cfg = Config.from_text(line)
        except ConfigShapeError as exc:
            raise ConfigShapeError(f"{path}:{lineno}: {exc}") from None
        if not netconfig.is_valid_config(cfg):
            raise ConfigShapeError(f"{path}:{lineno}: not a valid configuration "
                                   f"(connected, symmetric, no self loops)")
        configs.append(cfg)
    if not configs:
        raise ConfigShapeError(f"{path}: no configurations found")
    return configs


def _cmd_count(args) -> int:
    if args.column == "labeled":
        value = netconfig.count_labeled(args.universe)
    else:
        value = len(netconfig.enumerate_canonical(args.universe))
    print(value)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    configs = netconfig.enumerate_canonical(args.max_nodes)
    if args.format == "json":
        text = json.dumps([c.to_json_dict() for c in configs], indent=2)
    else:
        text = "\n".join(c.to_text() for c in configs)
    if args.out:
        args.out.write_text(text + "\n")
        print(f"wrote {len(configs)} configurations to {args.out}")
    else:
        print(text)
    return EXIT_OK


def _cmd_check(args) -> int:
    symmetry = args.symmetry == "on"
    check = checker.check_correctness if args.property == "correctness" \
        else checker.check_termination
    if args.max_nodes is not None:
        report = checker.sweep(args.max_nodes, args.variant, args.property,
                               state_budget=args.state_budget, symmetry=symmetry)
    else:
        configs = _read_configs(args.config)
        report = SweepReport(args.property, args.variant,
                             max(c.node_count for c in configs))
        for cfg in configs:
            try:
                verdict = check(cfg, args.variant,
                                state_budget=args.state_budget, symmetry=symmetry)
                report.entries.append(SweepEntry(
                    cfg, verdict.outcome, verdict.reason, verdict.witness,
                    verdict.stats))
            except StateBudgetExceeded as exc:
                report.entries.append(SweepEntry(
                    cfg, checker.INCONCLUSIVE, "state-budget-exceeded", None,
                    exc.stats))
    print(report_text(report, show_timing=not args.no_timing))
    if args.out:
        obj = report.to_json_dict(no_timing=args.no_timing)
        args.out.write_text(json.dumps(obj, indent=2) + "\n")
        from .figures import write_report_artifacts
        created = write_report_artifacts(obj, args.out)
        print(f"report: {args.out}")
        for path in created:
            print(f"report: {path}")
    if report.violations:
        return EXIT_VIOLATION
    if any(e.outcome == checker.INCONCLUSIVE for e in report.entries):
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_run(args) -> int:
    configs = _read_configs(args.config)
    if len(configs) != 1:
        raise ConfigShapeError(f"{args.config}: run needs exactly one "
                               f"configuration, found {len(configs)}")
    import time
    t0 = time.perf_counter()
    trace = checker.shortest_trace_to(configs[0], args.variant, args.target,
                                      max_depth=args.max_steps,
                                      state_budget=args.state_budget)
    if trace is None:
        print(f"no reachable state satisfies '{args.target}'"
              + (f" within {args.max_steps} steps" if args.max_steps else ""))
        return EXIT_VIOLATION
    print(trace_text(trace))
    print(f"Trace length: {len(trace.states)} states.")
    if not args.no_timing:
        print(f"Search took {int((time.perf_counter() - t0) * 1000)} ms.")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(static_dir=args.static)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "count": _cmd_count,
        "enumerate": _cmd_enumerate,
        "check": _cmd_check,
        "run": _cmd_run,
        "serve": _cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except (ConfigShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
