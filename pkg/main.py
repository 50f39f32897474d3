#!/usr/bin/env python3
"""
FFA Benchmark - Main Entry Point

Command line for running experiment grids, summarizing their results,
listing the registered algorithms and problems, and replaying the canned
reproduction scenarios.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError
from tabulate import tabulate

from algorithms.ea import OVERWRITE_RULES
from algorithms.gga import CROSSOVER_GATES
from algorithms.runner import ALGORITHMS, FFA_ONLY, PURE_COUNTERPART, options_from_config
from config import load_config, parse_int, setup_logging
from harness.experiment import (
    MAXSAT,
    ExperimentInterrupted,
    ExperimentRunner,
    ExperimentSpec,
    ProblemSpec,
    plan_cells,
    seed_table,
)
from harness.records import RecordParseError, load_records, save_records
from problems.registry import PROBLEMS, WIDTH_PROBLEMS, WIDTH_SHORTCUTS
from repro.scenarios import SCENARIOS, run_scenario
from sat.dimacs import DimacsParseError
from stats.summary import (
    PLOT_HEADER,
    SUMMARY_HEADER,
    exponent_table,
    format_row,
    plot_data,
    slowdown_table,
    summarize,
    summary_rows,
    write_rows,
)

# Setup logging
logger = logging.getLogger(__name__)

EXIT_IO_ERROR = 1
EXIT_INTERRUPTED = 130

REPORT_METRICS = ("mean", "ert", "success", "slowdown", "t", "summary")

# Problems whose side length can be given instead of the scale
SIDE_FLAGS = {"nqueens": "n", "ising2d": "N"}


def _int_list(raw: str) -> List[int]:
    try:
        return [parse_int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")


def _int(raw: str) -> int:
    try:
        return parse_int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")


def _id_list(raw: str) -> List[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def build_parser(config: Dict[str, Any]) -> argparse.ArgumentParser:
    """Build the argument parser; defaults come from the loaded configuration."""
    experiment = config["experiment"]
    algorithm_ids = ", ".join(ALGORITHMS)
    problem_ids = ", ".join(list(PROBLEMS) + [MAXSAT])

    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Benchmark pure and Frequency Fitness Assignment optimizers on bit-string problems.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="execute an experiment grid and write run records")
    run_parser.add_argument("--algo", type=_id_list, required=True, help=f"comma-separated ids from: {algorithm_ids}")
    run_parser.add_argument("--problem", required=True, choices=list(PROBLEMS) + [MAXSAT], help=f"one of: {problem_ids}")
    run_parser.add_argument("--scales", type=_int_list, default=None, help="comma-separated bit-string lengths, e.g. 16,32")
    run_parser.add_argument(
        "--omega",
        default=None,
        help=f"jump/plateau width: an integer or one of {', '.join(WIDTH_SHORTCUTS)}",
    )
    run_parser.add_argument("--n", type=_int, default=None, help="nqueens board side (scale n^2)")
    run_parser.add_argument("--N", type=_int, default=None, help="ising2d torus side (scale N^2)")
    run_parser.add_argument("--cnf-dir", default=None, help="directory of DIMACS *.cnf files for maxsat")
    run_parser.add_argument(
        "--instances", type=_int, default=None, help="generated planted 3-SAT instances per scale (maxsat without --cnf-dir)"
    )
    run_parser.add_argument("--runs", type=_int, default=experiment["runs"], help="runs per cell")
    run_parser.add_argument("--budget", type=_int, default=experiment["budget"], help="FE budget per run, e.g. 1e7")
    run_parser.add_argument("--seed", type=_int, default=experiment["base_seed"], help="base seed")
    run_parser.add_argument("--out", required=True, help="output CSV path, '-' for standard output")
    run_parser.add_argument("--parallel", type=_int, default=experiment["parallel"], help="worker processes")
    run_parser.add_argument("--gga-p", type=float, default=None, help="GGA/GFGA mutation rate times s, e.g. 0.773581")
    run_parser.add_argument("--gfga-gate", choices=CROSSOVER_GATES, default=None, help="GFGA crossover condition")
    run_parser.add_argument("--eafea-overwrite", choices=OVERWRITE_RULES, default=None, help="EAFEA overwrite condition")
    run_parser.add_argument("--dump-dir", default=config["ffa"]["dump_dir"], help="write FFA frequency tables here")

    report_parser = commands.add_parser("report", help="summarize a run record CSV")
    report_parser.add_argument("--in", dest="source", required=True, help="run record CSV")
    report_parser.add_argument("--metric", required=True, choices=REPORT_METRICS)
    report_parser.add_argument("--pair", default=None, help="ffa:pure algorithm pair for --metric slowdown, e.g. fea:ea")
    report_parser.add_argument("--out", default="-", help="output CSV path, '-' for a table on standard output")

    commands.add_parser("list", help=f"list algorithms ({algorithm_ids}), problems and scenarios")

    repro_parser = commands.add_parser("repro", help="run a canned reproduction scenario")
    repro_parser.add_argument("name", choices=list(SCENARIOS))
    repro_parser.add_argument("--budget", type=_int, default=None, help="FE budget per run")
    repro_parser.add_argument("--parallel", type=_int, default=None, help="worker processes")

    return parser


def _problem_spec(args: argparse.Namespace, parser: argparse.ArgumentParser) -> ProblemSpec:
    params: Dict[str, Any] = {}

    if args.problem in WIDTH_PROBLEMS:
        if args.omega is None:
            parser.error(
                f"--problem {args.problem} needs --omega: an integer or one of {', '.join(WIDTH_SHORTCUTS)}"
            )
        params["omega"] = args.omega
    elif args.omega is not None:
        parser.error(f"--omega does not apply to --problem {args.problem}")

    scales = args.scales
    for problem, flag in SIDE_FLAGS.items():
        side = getattr(args, flag)
        if side is None:
            continue
        if args.problem != problem:
            parser.error(f"--{flag} only applies to --problem {problem}")
        params[flag] = side
        if scales is None:
            scales = [side * side]

    if args.problem == MAXSAT:
        if args.instances is not None:
            params["instances"] = args.instances
    elif args.cnf_dir or args.instances is not None:
        parser.error("--cnf-dir and --instances only apply to --problem maxsat")

    if scales is None and not (args.problem == MAXSAT and args.cnf_dir):
        parser.error("--scales is required")
    return ProblemSpec(name=args.problem, scales=scales or [], params=params)


def cmd_run(args: argparse.Namespace, parser: argparse.ArgumentParser, config: Dict[str, Any]) -> int:
    """Execute the grid given on the command line and save its records."""
    unknown = [a for a in args.algo if a not in ALGORITHMS]
    if unknown or not args.algo:
        parser.error(f"--algo: unknown ids {unknown}; known: {', '.join(ALGORITHMS)}")

    options = options_from_config(config)
    if args.gga_p is not None:
        options["p_factor"] = args.gga_p
    if args.gfga_gate is not None:
        options["crossover_gate"] = args.gfga_gate
    if args.eafea_overwrite is not None:
        options["overwrite"] = args.eafea_overwrite

    try:
        spec = ExperimentSpec(
            algorithms=args.algo,
            problems=[_problem_spec(args, parser)],
            runs=args.runs,
            budget=args.budget,
            base_seed=args.seed,
            instance_dir=args.cnf_dir,
            options=options,
            dump_dir=args.dump_dir,
        )
        cells = plan_cells(spec)
    except (DimacsParseError, OSError) as e:
        logger.error(f"Cannot load instances: {e}")
        return EXIT_IO_ERROR
    except (ValidationError, ValueError) as e:
        parser.error(str(e))

    print(spec.model_dump_json(indent=2), file=sys.stderr)
    print(
        tabulate(seed_table(cells), headers=["problem", "instance", "runs", "first seed", "last seed"]),
        file=sys.stderr,
    )

    config["experiment"]["parallel"] = args.parallel
    runner = ExperimentRunner(config)
    try:
        records = runner.execute(spec, cells)
        status = 0
    except ExperimentInterrupted as e:
        records = e.records
        status = EXIT_INTERRUPTED

    try:
        save_records(records, args.out)
    except OSError as e:
        logger.error(f"Cannot write {args.out}: {e}")
        return EXIT_IO_ERROR
    return status


def _report_rows(args: argparse.Namespace, parser: argparse.ArgumentParser, records) -> tuple:
    if args.metric == "slowdown":
        if not args.pair or args.pair.count(":") != 1:
            parser.error("--metric slowdown needs --pair ffa-algorithm:pure-algorithm, e.g. fea:ea")
        ffa, pure = args.pair.split(":")
        if ffa not in ALGORITHMS or pure not in ALGORITHMS:
            parser.error(f"--pair {args.pair}: known algorithms are {', '.join(ALGORITHMS)}")
        return ["pair", "problem", "scale", "slowdown"], slowdown_table(records, ffa, pure)
    if args.pair:
        parser.error("--pair only applies to --metric slowdown")
    if args.metric == "t":
        return ["algorithm", "problem", "t"], exponent_table(records)
    if args.metric == "summary":
        return SUMMARY_HEADER, summary_rows(summarize(records))
    return PLOT_HEADER, plot_data(summarize(records), args.metric)


def cmd_report(args: argparse.Namespace, parser: argparse.ArgumentParser, config: Dict[str, Any]) -> int:
    """Compute one statistic over a results file."""
    try:
        records = load_records(args.source)
    except (OSError, RecordParseError) as e:
        logger.error(f"Cannot read {args.source}: {e}")
        return EXIT_IO_ERROR

    header, rows = _report_rows(args, parser, records)
    if args.out == "-":
        print(tabulate([format_row(row) for row in rows], headers=header, disable_numparse=True))
        return 0
    try:
        with open(args.out, "w", newline="") as f:
            write_rows(header, rows, f)
    except OSError as e:
        logger.error(f"Cannot write {args.out}: {e}")
        return EXIT_IO_ERROR
    logger.info(f"Report written to {args.out}")
    return 0


def cmd_list(args: argparse.Namespace, parser: argparse.ArgumentParser, config: Dict[str, Any]) -> int:
    """Print the registered algorithms, problems and scenarios."""
    algorithm_rows = []
    for algorithm_id in ALGORITHMS:
        if algorithm_id in FFA_ONLY:
            kind = "ffa"
        elif algorithm_id in PURE_COUNTERPART:
            kind = "hybrid"
        else:
            kind = "pure"
        algorithm_rows.append((algorithm_id, kind, PURE_COUNTERPART.get(algorithm_id, "")))
    print(tabulate(algorithm_rows, headers=["algorithm", "kind", "pure counterpart"]))
    print()

    problem_rows = []
    for name in list(PROBLEMS) + [MAXSAT]:
        if name in WIDTH_PROBLEMS:
            parameters = f"--omega (int or {', '.join(WIDTH_SHORTCUTS)})"
        elif name in SIDE_FLAGS:
            parameters = f"--{SIDE_FLAGS[name]} or a square scale"
        elif name == MAXSAT:
            parameters = "--cnf-dir, or --instances generated per scale"
        else:
            parameters = ""
        problem_rows.append((name, parameters))
    print(tabulate(problem_rows, headers=["problem", "parameters"]))
    print()

    print(tabulate([(s.name, s.description) for s in SCENARIOS.values()], headers=["scenario", "checks"]))
    return 0


def cmd_repro(args: argparse.Namespace, parser: argparse.ArgumentParser, config: Dict[str, Any]) -> int:
    """Run a reproduction scenario; exit 0 on PASS, 1 on FAIL."""
    if args.budget is not None:
        config["repro"]["budget"] = args.budget
    if args.parallel is not None:
        config["experiment"]["parallel"] = args.parallel
    try:
        result = run_scenario(args.name, config)
    except ExperimentInterrupted:
        logger.warning(f"Scenario {args.name} interrupted")
        return EXIT_INTERRUPTED

    print(tabulate([format_row(row) for row in result.rows], headers=result.headers, disable_numparse=True))
    print(f"{result.name}: {'PASS' if result.passed else 'FAIL'}")
    return 0 if result.passed else 1


COMMANDS = {
    "run": cmd_run,
    "report": cmd_report,
    "list": cmd_list,
    "repro": cmd_repro,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse the command line and dispatch to the subcommand."""
    # Load configuration
    config = load_config()

    parser = build_parser(config)
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    return COMMANDS[args.command](args, parser, config)


if __name__ == "__main__":
    sys.exit(main())
