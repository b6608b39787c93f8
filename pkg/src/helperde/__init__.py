"""Helper-objective differential evolution for constrained optimization.

The library recasts a box-bounded constrained minimization problem as an
unconstrained multi-objective one over a configurable set of helper scores
(raw objective, total constraint violation, a feasible-rule score and
penalty composites) and solves it with a dominance-selection differential
evolution loop. A benchmark harness runs the g01-g13 test suite with
reproducible seeds and NA-aware error statistics.
"""

from .core import Bounds, EvaluatedIndividual, RngStream, clip_check, make_rng, random_point
from .engine import (RunResult, SolverConfig, SolverState, archive_step,
                     de_crossover, de_mutate, evolve_generation, init_state,
                     run, run_greedy)
from .fitness import (Helper, HelperSet, dominates, feasible_rule_less,
                      helper_matrix, objective_vector, violation,
                      worst_feasible_reference)
from .harness import (ComparisonSummary, ExperimentConfig, ProblemComparison,
                      RunStatistics, aggregate_errors, compare_report,
                      derive_run_seed, format_comparison, format_csv,
                      read_csv, run_error, run_experiment, write_csv)
from .problems import (ConstrainedProblem, ProblemMeta, PROBLEM_IDS,
                       evaluate_raw, get_meta, get_problem,
                       parse_problem_ids, problem_catalog)

__version__ = "0.1.0"
