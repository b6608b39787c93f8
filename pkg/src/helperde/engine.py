"""Differential-evolution variation operators and the generational loop.

Two selection modes are provided. The dominance mode evolves a random
subset of the population each generation and lets the nondominated children
replace dominated subset members, judged on the active helper objectives.
The greedy mode is the classic single-objective DE loop where every trial
vector competes with its own target under the feasibility rule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Bounds, EvaluatedIndividual, RngStream, make_rng, random_point
from .fitness import HelperSet, feasible_rule_less, helper_matrix, violation
from .problems import ConstrainedProblem, evaluate_raw

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters.

    mu is the population size, lam the number of individuals entering DE
    variation per generation, f_scale the differential weight, cr the
    crossover rate and fes_max the evaluation budget. The archive fields
    control the optional reinjection of low-violation children collected
    from all-infeasible broods.
    """

    mu: int = 180
    lam: int = 8
    f_scale: float = 0.6
    cr: float = 0.95
    fes_max: int = 5000
    helpers: HelperSet = field(default_factory=lambda: HelperSet.standard(4))
    archive_enabled: bool = False
    archive_interval: int = 20
    archive_count: int = 3
    max_bound_retries: int = 100

    def __post_init__(self):
        if not 1 <= self.lam <= self.mu:
            raise ValueError("lam must satisfy 1 <= lam <= mu")
        if not 0.0 < self.f_scale <= 2.0:
            raise ValueError("f_scale must lie in (0, 2]")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError("cr must lie in [0, 1]")
        if self.fes_max < self.mu:
            raise ValueError("fes_max must cover at least the initial population")
        if self.archive_interval < 1 or self.archive_count < 1:
            raise ValueError("archive interval and count must be positive")
        if self.max_bound_retries < 1:
            raise ValueError("max_bound_retries must be positive")


@dataclass
class SolverState:
    """Mutable per-run state owned by a single run."""

    population: list[EvaluatedIndividual]
    fes: int
    generation: int
    rng: RngStream
    best_feasible: Optional[EvaluatedIndividual] = None
    archive: list[EvaluatedIndividual] = field(default_factory=list)


@dataclass
class RunResult:
    """Outcome of one independent run.

    best_feasible is the lowest-objective feasible individual among all
    evaluated ones, or None when no feasible point was ever seen. trace
    holds the best feasible objective so far at every generation boundary
    (None entries while nothing feasible has been found).
    """

    best_feasible: Optional[EvaluatedIndividual]
    fes: int
    generations: int
    trace: list[Optional[float]]


def _distinct_indices(size: int, exclude: int, rng: RngStream) -> tuple[int, int, int]:
    r1 = r2 = r3 = exclude
    while r1 == exclude:
        r1 = int(rng.integers(size))
    while r2 == exclude or r2 == r1:
        r2 = int(rng.integers(size))
    while r3 == exclude or r3 == r2 or r3 == r1:
        r3 = int(rng.integers(size))
    return r1, r2, r3


def de_mutate(population: list[EvaluatedIndividual], target_index: int,
              f_scale: float, bounds: Bounds, rng: RngStream,
              max_retries: int = 100) -> np.ndarray:
    """rand/1 mutant for one target: x_r1 + f_scale * (x_r2 - x_r3).

    r1, r2, r3 are mutually distinct and differ from the target index. An
    out-of-box mutant is redrawn wholesale (fresh r1, r2, r3); after
    max_retries failures it is clamped to the box instead.
    """
    if len(population) < 4:
        raise ValueError("mutation needs at least 4 individuals")
    lower, upper = bounds.lower, bounds.upper
    mutant = None
    for _ in range(max_retries):
        r1, r2, r3 = _distinct_indices(len(population), target_index, rng)
        mutant = population[r1].x + f_scale * (population[r2].x - population[r3].x)
        if (mutant >= lower).all() and (mutant <= upper).all():
            return mutant
    logger.debug("bound repair exhausted %d retries; clamping mutant", max_retries)
    return np.clip(mutant, lower, upper)


def de_crossover(target: np.ndarray, mutant: np.ndarray, cr: float,
                 rng: RngStream) -> np.ndarray:
    """Binomial crossover of target and mutant.

    Each coordinate comes from the mutant when its uniform draw is <= cr;
    one randomly chosen coordinate always does.
    """
    n = len(target)
    if len(mutant) != n:
        raise ValueError("target and mutant must have equal dimension")
    take = rng.random(n) <= cr
    take[int(rng.integers(n))] = True
    return np.where(take, mutant, target)


def _evaluate(problem: ConstrainedProblem, x: np.ndarray, delta: float) -> EvaluatedIndividual:
    f, g, h = evaluate_raw(problem, x)
    return EvaluatedIndividual(x=x, f=f, v=violation(g, h, delta))


def _rescore(individuals: list[EvaluatedIndividual], helpers: HelperSet) -> None:
    """Refresh helper-objective vectors against a common population reference."""
    n = len(individuals)
    fs = np.fromiter((ind.f for ind in individuals), dtype=float, count=n)
    vs = np.fromiter((ind.v for ind in individuals), dtype=float, count=n)
    feasible = vs == 0.0
    fsharp = float(fs[feasible].max()) if feasible.any() else 0.0
    matrix = helper_matrix(fs, vs, fsharp, helpers)
    for i, ind in enumerate(individuals):
        ind.objectives = matrix[i]


def _better_feasible(candidate: EvaluatedIndividual,
                     incumbent: Optional[EvaluatedIndividual]) -> Optional[EvaluatedIndividual]:
    if candidate.v != 0.0:
        return incumbent
    if incumbent is None or candidate.f < incumbent.f:
        return candidate
    return incumbent


def init_state(problem: ConstrainedProblem, config: SolverConfig, seed: int) -> SolverState:
    """Uniformly initialized population of mu evaluated individuals."""
    rng = make_rng(seed)
    population = [
        _evaluate(problem, random_point(problem.bounds, rng), config.helpers.delta)
        for _ in range(config.mu)
    ]
    _rescore(population, config.helpers)
    best = None
    for ind in population:
        best = _better_feasible(ind, best)
    return SolverState(population=population, fes=config.mu, generation=0,
                       rng=rng, best_feasible=best)


def evolve_generation(state: SolverState, config: SolverConfig,
                      problem: ConstrainedProblem) -> SolverState:
    """One dominance-selection generation.

    lam targets are sampled without replacement; each produces one child by
    mutation and crossover. All parents and children are rescored against a
    common reference, the nondominated children are applied in random order
    and each may replace one randomly chosen target it dominates (targets
    replaced earlier in the same generation are themselves at risk). The
    untouched remainder of the population carries over unchanged.
    """
    rng = state.rng
    population = state.population
    helpers = config.helpers

    target_slots = [int(i) for i in rng.choice(config.mu, size=config.lam, replace=False)]
    children = []
    for slot in target_slots:
        mutant = de_mutate(population, slot, config.f_scale, problem.bounds,
                           rng, config.max_bound_retries)
        trial = de_crossover(population[slot].x, mutant, config.cr, rng)
        children.append(_evaluate(problem, trial, helpers.delta))
    state.fes += config.lam

    _rescore(population + children, helpers)

    # Pairwise dominance over the brood, vectorized; row i dominates column j
    # iff objectives[i] <= objectives[j] everywhere with a strict entry.
    child_obj = np.stack([child.objectives for child in children])
    not_worse = (child_obj[:, None, :] <= child_obj[None, :, :]).all(axis=2)
    strictly = (child_obj[:, None, :] < child_obj[None, :, :]).any(axis=2)
    beaten_by_sibling = (not_worse & strictly).any(axis=0)
    nondominated = [child for child, beaten in zip(children, beaten_by_sibling) if not beaten]

    selected = [population[slot] for slot in target_slots]
    for k in rng.permutation(len(nondominated)):
        child = nondominated[int(k)]
        obj = child.objectives
        selected_obj = np.stack([member.objectives for member in selected])
        beaten = np.nonzero((obj <= selected_obj).all(axis=1)
                            & (obj < selected_obj).any(axis=1))[0]
        if beaten.size:
            selected[int(beaten[int(rng.integers(beaten.size))])] = child
    for slot, member in zip(target_slots, selected):
        population[slot] = member

    for child in children:
        state.best_feasible = _better_feasible(child, state.best_feasible)

    state.generation += 1
    if config.archive_enabled:
        archive_step(state, children, config)
    return state


def archive_step(state: SolverState, children: list[EvaluatedIndividual],
                 config: SolverConfig) -> SolverState:
    """Collect and periodically reinject low-violation infeasible children.

    When a whole brood is infeasible its lowest-violation child is kept in
    the archive. Every archive_interval generations up to archive_count
    random archive members overwrite random population members, then the
    archive is cleared.
    """
    if not config.archive_enabled:
        return state
    if children and all(child.v > 0.0 for child in children):
        state.archive.append(min(children, key=lambda child: child.v))
    if state.generation % config.archive_interval == 0 and state.archive:
        count = min(len(state.archive), config.archive_count)
        slots = state.rng.choice(config.mu, size=count, replace=False)
        picks = state.rng.choice(len(state.archive), size=count, replace=False)
        for slot, pick in zip(slots, picks):
            state.population[int(slot)] = state.archive[int(pick)]
        state.archive.clear()
    return state


def run(problem: ConstrainedProblem, config: SolverConfig, seed: int) -> RunResult:
    """One full dominance-selection run under the evaluation budget.

    Identical (problem, config, seed) triples reproduce the result
    bit-exactly.
    """
    state = init_state(problem, config, seed)
    trace: list[Optional[float]] = [None if state.best_feasible is None else state.best_feasible.f]
    while state.fes + config.lam <= config.fes_max:
        evolve_generation(state, config, problem)
        trace.append(None if state.best_feasible is None else state.best_feasible.f)
    return RunResult(best_feasible=state.best_feasible, fes=state.fes,
                     generations=state.generation, trace=trace)


def run_greedy(problem: ConstrainedProblem, config: SolverConfig, seed: int) -> RunResult:
    """Classic DE run: one child per target, winner kept per feasibility rule.

    The whole population is varied each generation (lam is ignored) and a
    child replaces its target unless the target is strictly better. Costs
    mu evaluations per generation.
    """
    state = init_state(problem, config, seed)
    trace: list[Optional[float]] = [None if state.best_feasible is None else state.best_feasible.f]
    while state.fes + config.mu <= config.fes_max:
        population = state.population
        survivors = []
        for i in range(config.mu):
            mutant = de_mutate(population, i, config.f_scale, problem.bounds,
                               state.rng, config.max_bound_retries)
            trial = de_crossover(population[i].x, mutant, config.cr, state.rng)
            child = _evaluate(problem, trial, config.helpers.delta)
            survivors.append(population[i] if feasible_rule_less(population[i], child) else child)
            state.best_feasible = _better_feasible(child, state.best_feasible)
        state.population = survivors
        state.fes += config.mu
        state.generation += 1
        trace.append(None if state.best_feasible is None else state.best_feasible.f)
    return RunResult(best_feasible=state.best_feasible, fes=state.fes,
                     generations=state.generation, trace=trace)
