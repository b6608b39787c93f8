"""Command line interface: `helperde bench` and `helperde compare`."""

from __future__ import annotations

import argparse
import sys

from .engine import SolverConfig
from .fitness import Helper, HelperSet
from .harness import (ExperimentConfig, compare_report, format_comparison,
                      read_csv, run_experiment, write_csv)
from .problems import parse_problem_ids

_DEFAULTS = {
    "problems": "all",
    "helpers": "4",
    "fes": 5000,
    "runs": 25,
    "seed": 1,
    "mu": 180,
    "lambda": 8,
    "F": 0.6,
    "Cr": 0.95,
    "delta": 1e-4,
    "c4": 1.0,
    "c5": 10.0,
    "c6": 100.0,
    "archive": "off",
    "archive-interval": 20,
    "archive-count": 3,
    "workers": 1,
    "selection": "dominance",
    "out": "results.csv",
}

_CONVERTERS = {
    "problems": str, "helpers": str, "fes": int, "runs": int, "seed": int,
    "mu": int, "lambda": int, "F": float, "Cr": float, "delta": float,
    "c4": float, "c5": float, "c6": float, "archive": str,
    "archive-interval": int, "archive-count": int, "workers": int,
    "selection": str, "out": str,
}


def _read_config_file(path: str) -> dict:
    """key=value per line; blank lines and # comments ignored."""
    settings = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONVERTERS:
                raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
            settings[key] = _CONVERTERS[key](value.strip())
    return settings


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helperde",
        description="Constrained-optimization benchmarks for helper-objective DE.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a benchmark protocol and write a CSV")
    bench.add_argument("--config", help="key=value settings file; flags override it")
    bench.add_argument("--problems", help='ids like "g06", "g01..g13", comma lists, or "all"')
    bench.add_argument("--helpers",
                       help="2, 4 or 6 for the standard sets, or comma-separated helper names")
    bench.add_argument("--fes", type=int, help="evaluation budget per run")
    bench.add_argument("--runs", type=int, help="independent runs per problem")
    bench.add_argument("--seed", type=int, help="master seed of the run matrix")
    bench.add_argument("--mu", type=int, help="population size")
    bench.add_argument("--lambda", type=int, dest="lam",
                       help="individuals varied per generation")
    bench.add_argument("--F", type=float, dest="f_scale", help="differential weight")
    bench.add_argument("--Cr", type=float, dest="cr", help="crossover rate")
    bench.add_argument("--delta", type=float, help="equality-constraint tolerance")
    bench.add_argument("--c4", type=float, help="low penalty coefficient")
    bench.add_argument("--c5", type=float, help="mid penalty coefficient")
    bench.add_argument("--c6", type=float, help="high penalty coefficient")
    bench.add_argument("--archive", choices=("on", "off"),
                       help="reinjection archive for all-infeasible broods")
    bench.add_argument("--archive-interval", type=int, help="generations between reinjections")
    bench.add_argument("--archive-count", type=int, help="members reinjected per interval")
    bench.add_argument("--workers", type=int, help="parallel worker processes")
    bench.add_argument("--selection", choices=("dominance", "greedy"),
                       help="dominance selection or the greedy single-objective baseline")
    bench.add_argument("--out", help="output CSV path")

    compare = sub.add_parser("compare", help="compare two result CSVs")
    compare.add_argument("csv_a")
    compare.add_argument("csv_b")
    return parser


_CLI_KEYS = {
    "problems": "problems", "helpers": "helpers", "fes": "fes", "runs": "runs",
    "seed": "seed", "mu": "mu", "lam": "lambda", "f_scale": "F", "cr": "Cr",
    "delta": "delta", "c4": "c4", "c5": "c5", "c6": "c6", "archive": "archive",
    "archive_interval": "archive-interval", "archive_count": "archive-count",
    "workers": "workers", "selection": "selection", "out": "out",
}


def _effective_settings(args: argparse.Namespace) -> dict:
    settings = dict(_DEFAULTS)
    if args.config:
        settings.update(_read_config_file(args.config))
    for attr, key in _CLI_KEYS.items():
        value = getattr(args, attr)
        if value is not None:
            settings[key] = value
    return settings


def _parse_helpers(text: str, c4: float, c5: float, c6: float, delta: float) -> HelperSet:
    text = str(text).strip()
    if text in ("2", "4", "6"):
        return HelperSet.standard(int(text), c4=c4, c5=c5, c6=c6, delta=delta)
    try:
        active = tuple(Helper(token.strip()) for token in text.split(",") if token.strip())
    except ValueError:
        names = ", ".join(h.value for h in Helper)
        raise ValueError(f"bad --helpers value {text!r}; use 2, 4, 6 or names from: {names}")
    return HelperSet(active, c4=c4, c5=c5, c6=c6, delta=delta)


def _run_bench(args: argparse.Namespace) -> int:
    settings = _effective_settings(args)
    helpers = _parse_helpers(settings["helpers"], settings["c4"], settings["c5"],
                             settings["c6"], settings["delta"])
    solver = SolverConfig(
        mu=settings["mu"], lam=settings["lambda"], f_scale=settings["F"],
        cr=settings["Cr"], fes_max=settings["fes"], helpers=helpers,
        archive_enabled=settings["archive"] == "on",
        archive_interval=settings["archive-interval"],
        archive_count=settings["archive-count"],
    )
    config = ExperimentConfig(
        problems=tuple(parse_problem_ids(settings["problems"])),
        solver=solver, runs=settings["runs"], master_seed=settings["seed"],
        selection=settings["selection"], workers=settings["workers"],
    )
    stats = run_experiment(config)
    write_csv(stats, settings["out"])
    attained = sum(s.feasible_runs > 0 for s in stats)
    print(f"wrote {settings['out']}: {len(stats)} problems, "
          f"{attained} with at least one feasible run")
    return 0


def _run_compare(args: argparse.Namespace) -> int:
    summary = compare_report(read_csv(args.csv_a), read_csv(args.csv_b))
    sys.stdout.write(format_comparison(summary, label_a=args.csv_a, label_b=args.csv_b))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _run_bench(args)
        return _run_compare(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
