"""Violation measure, helper objectives, Pareto dominance and the feasible rule.

A constrained problem min f(x) s.t. g <= 0, h = 0 is recast as an
unconstrained multi-objective problem over a configurable set of scores:

* OBJECTIVE      raw objective f(x), constraints ignored
* VIOLATION      total constraint violation v(x)
* FEASIBLE_RULE  f(x) for feasible points, else (worst feasible f in the
                 population) + v(x); its best feasible minimizer coincides
                 with the constrained optimum in any population
* PENALTY_LOW    f(x) + c4 * v(x)
* PENALTY_MID    f(x) + c5 * v(x)
* PENALTY_HIGH   f(x) + c6 * v(x)

All scores are minimized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import EvaluatedIndividual


class Helper(enum.Enum):
    OBJECTIVE = "objective"
    VIOLATION = "violation"
    FEASIBLE_RULE = "feasible_rule"
    PENALTY_LOW = "penalty_low"
    PENALTY_MID = "penalty_mid"
    PENALTY_HIGH = "penalty_high"


# The three standard configurations, by number of active scores.
_STANDARD_MODES = {
    2: (Helper.OBJECTIVE, Helper.VIOLATION),
    4: (Helper.OBJECTIVE, Helper.VIOLATION, Helper.FEASIBLE_RULE, Helper.PENALTY_LOW),
    6: tuple(Helper),
}


@dataclass(frozen=True)
class HelperSet:
    """Ordered selection of active helper objectives plus their parameters.

    c4/c5/c6 are the penalty coefficients of the three penalty composites;
    delta is the tolerance applied to equality constraints.
    """

    active: tuple[Helper, ...]
    c4: float = 1.0
    c5: float = 10.0
    c6: float = 100.0
    delta: float = 1e-4

    def __post_init__(self):
        active = tuple(self.active)
        if not active:
            raise ValueError("at least one helper objective must be active")
        if len(set(active)) != len(active):
            raise ValueError("helper objectives must not repeat")
        if min(self.c4, self.c5, self.c6) < 0:
            raise ValueError("penalty coefficients must be non-negative")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        object.__setattr__(self, "active", active)

    @property
    def size(self) -> int:
        return len(self.active)

    @classmethod
    def standard(cls, count: int, *, c4: float = 1.0, c5: float = 10.0,
                 c6: float = 100.0, delta: float = 1e-4) -> "HelperSet":
        """The 2-, 4- or 6-objective configuration."""
        if count not in _STANDARD_MODES:
            raise ValueError(f"standard helper count must be one of {sorted(_STANDARD_MODES)}")
        return cls(_STANDARD_MODES[count], c4=c4, c5=c5, c6=c6, delta=delta)


def violation(g: Sequence[float], h: Sequence[float], delta: float) -> float:
    """Total constraint violation.

    Sum of max(0, g_i) over inequalities and max(0, |h_j| - delta) over
    equalities. Zero exactly when the point is feasible under delta.
    """
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    total = 0.0
    if g.size:
        total += float(np.maximum(0.0, g).sum())
    if h.size:
        total += float(np.maximum(0.0, np.abs(h) - delta).sum())
    return total


def worst_feasible_reference(population: Iterable[EvaluatedIndividual]) -> float:
    """Largest raw objective among feasible members; 0 when none is feasible."""
    worst = None
    for ind in population:
        if ind.v == 0.0 and (worst is None or ind.f > worst):
            worst = ind.f
    return 0.0 if worst is None else worst


def helper_matrix(f: np.ndarray, v: np.ndarray, fsharp: float,
                  helpers: HelperSet) -> np.ndarray:
    """Helper-objective values for a batch of (f, v) pairs.

    Returns an (n, m) array whose columns follow helpers.active. fsharp is
    the worst feasible raw objective of the population the batch lives in.
    """
    f = np.asarray(f, dtype=float)
    v = np.asarray(v, dtype=float)
    cols = []
    for helper in helpers.active:
        if helper is Helper.OBJECTIVE:
            cols.append(f)
        elif helper is Helper.VIOLATION:
            cols.append(v)
        elif helper is Helper.FEASIBLE_RULE:
            cols.append(np.where(v == 0.0, f, fsharp + v))
        elif helper is Helper.PENALTY_LOW:
            cols.append(f + helpers.c4 * v)
        elif helper is Helper.PENALTY_MID:
            cols.append(f + helpers.c5 * v)
        else:
            cols.append(f + helpers.c6 * v)
    return np.column_stack(cols)


def objective_vector(f: float, v: float, fsharp: float, helpers: HelperSet) -> np.ndarray:
    """Helper-objective values of a single individual, in active order."""
    return helper_matrix(np.array([f]), np.array([v]), fsharp, helpers)[0]


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """Pareto dominance for minimization: a <= b everywhere, < somewhere."""
    if len(a) != len(b):
        raise ValueError("objective vectors must have equal length")
    return bool(np.all(a <= b) and np.any(a < b))


def feasible_rule_less(a: EvaluatedIndividual, b: EvaluatedIndividual) -> bool:
    """Strict 'a better than b' under the three-case feasibility rule.

    Feasible beats infeasible; among feasible the smaller raw objective
    wins; among infeasible the smaller violation wins.
    """
    if a.v == 0.0 and b.v == 0.0:
        return a.f < b.f
    if a.v == 0.0:
        return True
    if b.v == 0.0:
        return False
    return a.v < b.v
