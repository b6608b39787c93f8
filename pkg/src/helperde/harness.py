"""Experiment runner: independent runs per problem, error statistics, CSV I/O.

A problem's error value for one run is f(best feasible found) - f(best
known), or NA when the run never saw a feasible point. Across runs, NA
ranks strictly worse than any numeric error for the best/median/worst
order statistics, and a single NA poisons mean and std to NA.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import RunResult, SolverConfig, run, run_greedy
from .problems import get_problem

CSV_HEADER = "problem,helpers,fes,runs,best,median,worst,mean,std,feasible_runs"


@dataclass(frozen=True)
class ExperimentConfig:
    """A full benchmark protocol: which problems, how many runs, one solver setup."""

    problems: tuple[str, ...]
    solver: SolverConfig
    runs: int = 25
    master_seed: int = 1
    selection: str = "dominance"  # "dominance" | "greedy"
    workers: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be positive")
        if self.selection not in ("dominance", "greedy"):
            raise ValueError("selection must be 'dominance' or 'greedy'")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        object.__setattr__(self, "problems", tuple(self.problems))


@dataclass(frozen=True)
class RunStatistics:
    """Aggregated error values of one problem over independent runs.

    None encodes NA. errors keeps the raw per-run values in run-index
    order; it is not part of the CSV row.
    """

    problem: str
    helpers: int
    fes: int
    runs: int
    best: Optional[float]
    median: Optional[float]
    worst: Optional[float]
    mean: Optional[float]
    std: Optional[float]
    feasible_runs: int
    errors: tuple = ()


def derive_run_seed(master_seed: int, problem_id: str, run_index: int) -> int:
    """Deterministic, collision-free 64-bit seed for one run of the matrix."""
    sequence = np.random.SeedSequence(
        (master_seed, zlib.crc32(problem_id.encode("ascii")), run_index)
    )
    return int(sequence.generate_state(1, np.uint64)[0])


def run_error(result: RunResult, best_known: float) -> Optional[float]:
    """Error value of one run, or None when no feasible point was found."""
    if result.best_feasible is None:
        return None
    return result.best_feasible.f - best_known


def _execute_run(problem_id: str, solver: SolverConfig, selection: str,
                 seed: int) -> Optional[float]:
    problem = get_problem(problem_id)
    runner = run_greedy if selection == "greedy" else run
    return run_error(runner(problem, solver, seed), problem.best_known)


def aggregate_errors(problem_id: str, helpers: int, fes: int,
                     errors: Sequence[Optional[float]]) -> RunStatistics:
    """Order statistics and moments of per-run error values with NA semantics.

    The median is the lower middle order statistic (the 13th of 25), never
    interpolated.
    """
    if not errors:
        raise ValueError("errors must not be empty")
    ranked = sorted(errors, key=lambda e: (e is None, 0.0 if e is None else e))
    n = len(ranked)
    feasible = sum(e is not None for e in errors)
    if feasible == n:
        values = np.array(errors, dtype=float)
        mean = float(values.mean())
        std = float(values.std(ddof=1)) if n > 1 else 0.0
    else:
        mean = std = None
    return RunStatistics(
        problem=problem_id, helpers=helpers, fes=fes, runs=n,
        best=ranked[0], median=ranked[(n - 1) // 2], worst=ranked[-1],
        mean=mean, std=std, feasible_runs=feasible, errors=tuple(errors),
    )


def run_experiment(config: ExperimentConfig) -> list[RunStatistics]:
    """Execute the full run matrix and aggregate per-problem statistics.

    Per-run seeds are derived from (master_seed, problem id, run index), so
    the outcome does not depend on the worker count or scheduling.
    """
    jobs = [
        (pid, config.solver, config.selection,
         derive_run_seed(config.master_seed, pid, run_index))
        for pid in config.problems
        for run_index in range(config.runs)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_execute_run, *zip(*jobs), chunksize=1))
    else:
        outcomes = [_execute_run(*job) for job in jobs]

    stats = []
    helpers = config.solver.helpers.size
    for i, pid in enumerate(config.problems):
        errors = outcomes[i * config.runs:(i + 1) * config.runs]
        stats.append(aggregate_errors(pid, helpers, config.solver.fes_max, errors))
    return stats


def _format_value(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.4E}"


def format_csv(stats: Sequence[RunStatistics]) -> str:
    """Render statistics rows as CSV text (byte-stable for equal inputs)."""
    lines = [CSV_HEADER]
    for s in stats:
        lines.append(
            f"{s.problem},{s.helpers},{s.fes},{s.runs},"
            f"{_format_value(s.best)},{_format_value(s.median)},{_format_value(s.worst)},"
            f"{_format_value(s.mean)},{_format_value(s.std)},{s.feasible_runs}"
        )
    return "\n".join(lines) + "\n"


def write_csv(stats: Sequence[RunStatistics], path) -> None:
    """Write one row per problem; NA cells are rendered literally as NA."""
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(format_csv(stats))


def _parse_value(text: str) -> Optional[float]:
    return None if text == "NA" else float(text)


def read_csv(path) -> list[RunStatistics]:
    """Read statistics rows written by write_csv."""
    with open(path, "r", encoding="ascii") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a statistics CSV (bad header)")
    stats = []
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 10:
            raise ValueError(f"{path}: malformed row {line!r}")
        stats.append(RunStatistics(
            problem=fields[0], helpers=int(fields[1]), fes=int(fields[2]),
            runs=int(fields[3]), best=_parse_value(fields[4]),
            median=_parse_value(fields[5]), worst=_parse_value(fields[6]),
            mean=_parse_value(fields[7]), std=_parse_value(fields[8]),
            feasible_runs=int(fields[9]),
        ))
    return stats


@dataclass(frozen=True)
class ProblemComparison:
    problem: str
    feasible_runs_a: int
    feasible_runs_b: int
    best_a: Optional[float]
    best_b: Optional[float]


@dataclass(frozen=True)
class ComparisonSummary:
    """Side-by-side feasibility and best-error comparison of two protocols."""

    rows: tuple[ProblemComparison, ...]
    attained_a: int
    attained_b: int


def compare_report(stats_a: Sequence[RunStatistics],
                   stats_b: Sequence[RunStatistics]) -> ComparisonSummary:
    """Per-problem comparison plus the count of problems each side solved
    at least once. Requires both sides to cover the same problems in the
    same order."""
    problems_a = [s.problem for s in stats_a]
    problems_b = [s.problem for s in stats_b]
    if problems_a != problems_b:
        raise ValueError(f"problem sets differ: {problems_a} vs {problems_b}")
    rows = tuple(
        ProblemComparison(a.problem, a.feasible_runs, b.feasible_runs, a.best, b.best)
        for a, b in zip(stats_a, stats_b)
    )
    return ComparisonSummary(
        rows=rows,
        attained_a=sum(r.feasible_runs_a > 0 for r in rows),
        attained_b=sum(r.feasible_runs_b > 0 for r in rows),
    )


def format_comparison(summary: ComparisonSummary, label_a: str = "A",
                      label_b: str = "B") -> str:
    """Plain-text table for a comparison summary."""
    width = max(12, len(label_a) + 2, len(label_b) + 2)
    header = (f"{'problem':<8} {label_a + ' best':>{width}} {label_b + ' best':>{width}} "
              f"{label_a + ' feas':>{width}} {label_b + ' feas':>{width}}")
    lines = [header, "-" * len(header)]
    for row in summary.rows:
        lines.append(
            f"{row.problem:<8} {_format_value(row.best_a):>{width}} "
            f"{_format_value(row.best_b):>{width}} "
            f"{row.feasible_runs_a:>{width}} {row.feasible_runs_b:>{width}}"
        )
    lines.append("")
    lines.append(f"problems with any feasible run: {label_a}={summary.attained_a} "
                 f"{label_b}={summary.attained_b}")
    return "\n".join(lines) + "\n"
