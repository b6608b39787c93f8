import copy

import numpy as np
import pytest

from helperde.core import Bounds, EvaluatedIndividual, make_rng
from helperde.engine import (RunResult, SolverConfig, SolverState, archive_step,
                             de_crossover, de_mutate, evolve_generation,
                             init_state, run, run_greedy)
from helperde.fitness import (Helper, HelperSet, dominates, objective_vector,
                              violation, worst_feasible_reference)
from helperde.problems import ConstrainedProblem, evaluate_raw, get_problem


class ScriptedRng:
    """Plays back fixed integer and uniform draws for operator unit tests."""

    def __init__(self, ints=(), uniforms=()):
        self.ints = list(ints)
        self.uniforms = list(uniforms)

    def integers(self, high):
        return self.ints.pop(0)

    def random(self, n):
        out = np.array(self.uniforms[:n], dtype=float)
        self.uniforms = self.uniforms[n:]
        return out


def population_of(xs):
    return [EvaluatedIndividual(x=np.array(x, dtype=float), f=0.0, v=0.0) for x in xs]


def clone_rng(rng):
    fresh = make_rng(0)
    fresh.bit_generator.state = rng.bit_generator.state
    return fresh


def toy_problem(objective, inequalities=(), equalities=(), lower=(-5, -5), upper=(5, 5),
                pid="toy"):
    lower, upper = np.array(lower, dtype=float), np.array(upper, dtype=float)
    return ConstrainedProblem(
        id=pid, dimension=len(lower), bounds=Bounds(lower, upper),
        objective=objective, inequalities=tuple(inequalities),
        equalities=tuple(equalities), best_known=0.0, optimum=lower,
    )


SPHERE = toy_problem(lambda x: float((x ** 2).sum()))


class TestDeMutate:
    def test_difference_arithmetic(self):
        pop = population_of([(9.0, 9.0), (1.0, 1.0), (2.0, 0.0), (0.0, 0.0)])
        rng = ScriptedRng(ints=[1, 2, 3])  # r1, r2, r3 with target 0
        mutant = de_mutate(pop, 0, 0.6, Bounds(np.full(2, -10.0), np.full(2, 10.0)), rng)
        assert mutant == pytest.approx([2.2, 1.0])

    def test_zero_amplification_returns_base(self):
        pop = population_of([(9.0, 9.0), (1.0, 1.0), (2.0, 0.0), (0.0, 0.0)])
        rng = ScriptedRng(ints=[1, 2, 3])
        mutant = de_mutate(pop, 0, 0.0, Bounds(np.full(2, -10.0), np.full(2, 10.0)), rng)
        assert mutant == pytest.approx([1.0, 1.0])

    def test_out_of_box_mutant_redrawn_wholesale(self):
        pop = population_of([(9.0, 9.0), (1.0, 1.0), (2.0, 0.0), (0.0, 0.0), (1.0, 1.5)])
        bounds = Bounds(np.zeros(2), np.full(2, 2.0))
        # first triple gives (2.2, 1.0): x1 component 2.2 > 2 -> redraw;
        # second triple (4, 2, 3) gives (0,0) + 0.6*((2,0) - (0,0)) wait
        # r1=4 -> (1,1.5), r2=2 -> (2,0), r3=3 -> (0,0): (1,1.5)+0.6*(2,0)=(2.2,..)
        # still out; third triple r1=3, r2=1, r3=2: (0,0)+0.6*((1,1)-(2,0))=(-0.6,0.6) out;
        # fourth triple r1=1, r2=3, r3=2: (1,1)+0.6*((0,0)-(2,0))=(-0.2,1) out;
        # fifth triple r1=1, r2=2, r3=4: (1,1)+0.6*((2,0)-(1,1.5))=(1.6,0.1) inside.
        rng = ScriptedRng(ints=[1, 2, 3, 4, 2, 3, 3, 1, 2, 1, 3, 2, 1, 2, 4])
        mutant = de_mutate(pop, 0, 0.6, bounds, rng)
        assert mutant == pytest.approx([1.6, 0.1])

    def test_retry_exhaustion_falls_back_to_clamp(self):
        pop = population_of([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (-2.0, -2.0)])
        bounds = Bounds(np.zeros(2), np.full(2, 0.5))
        rng = make_rng(3)
        mutant = de_mutate(pop, 0, 2.0, bounds, rng, max_retries=5)
        assert np.all(mutant >= bounds.lower) and np.all(mutant <= bounds.upper)

    def test_small_population_rejected(self):
        with pytest.raises(ValueError):
            de_mutate(population_of([(0, 0), (1, 1), (2, 2)]), 0, 0.5,
                      Bounds(np.zeros(2), np.ones(2)), make_rng(1))

    def test_indices_exclude_target_and_each_other(self):
        pop = population_of([(float(i), float(i)) for i in range(6)])
        bounds = Bounds(np.full(2, -100.0), np.full(2, 100.0))
        rng = make_rng(11)
        for target in range(6):
            for _ in range(50):
                mutant = de_mutate(pop, target, 1.0, bounds, rng)
                # with F=1 and distinct integer-coded rows, x_r1 + x_r2 - x_r3
                # never reproduces the target row exactly unless indices repeat
                assert np.all(mutant >= bounds.lower)


class TestDeCrossover:
    def test_full_rate_copies_mutant(self):
        rng = make_rng(2)
        target, mutant = np.zeros(6), np.arange(1.0, 7.0)
        assert np.array_equal(de_crossover(target, mutant, 1.0, rng), mutant)

    def test_zero_rate_crosses_exactly_one_coordinate(self):
        rng = make_rng(4)
        target, mutant = np.zeros(5), np.full(5, 7.0)
        for _ in range(50):
            trial = de_crossover(target, mutant, 0.0, rng)
            assert np.count_nonzero(trial == 7.0) == 1

    def test_single_dimension_always_mutant(self):
        rng = make_rng(6)
        for _ in range(20):
            assert de_crossover(np.array([3.0]), np.array([9.0]), 0.0, rng) == 9.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            de_crossover(np.zeros(2), np.zeros(3), 0.5, make_rng(1))


class TestSolverConfig:
    def test_defaults_valid(self):
        cfg = SolverConfig()
        assert cfg.mu == 180 and cfg.lam == 8

    @pytest.mark.parametrize("kwargs", [
        {"lam": 0}, {"lam": 200, "mu": 100}, {"f_scale": 0.0}, {"f_scale": 2.5},
        {"cr": -0.1}, {"cr": 1.5}, {"fes_max": 10, "mu": 20},
        {"archive_interval": 0}, {"max_bound_retries": 0},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)


def reference_generation(population, config, problem, rng):
    """Executable restatement of the generational step, composed only from
    the public scalar operations. Must replay the engine draw for draw."""
    helpers = config.helpers
    targets = [int(i) for i in rng.choice(config.mu, size=config.lam, replace=False)]
    children = []
    for slot in targets:
        mutant = de_mutate(population, slot, config.f_scale, problem.bounds, rng,
                           config.max_bound_retries)
        trial = de_crossover(population[slot].x, mutant, config.cr, rng)
        f, g, h = evaluate_raw(problem, trial)
        children.append(EvaluatedIndividual(x=trial, f=f, v=violation(g, h, helpers.delta)))

    everyone = population + children
    fsharp = worst_feasible_reference(everyone)
    for member in everyone:
        member.objectives = objective_vector(member.f, member.v, fsharp, helpers)

    front = [c for c in children
             if not any(dominates(o.objectives, c.objectives) for o in children if o is not c)]
    chosen = [population[slot] for slot in targets]
    for k in rng.permutation(len(front)):
        child = front[int(k)]
        beaten = [i for i, m in enumerate(chosen) if dominates(child.objectives, m.objectives)]
        if beaten:
            chosen[beaten[int(rng.integers(len(beaten)))]] = child
    result = list(population)
    for slot, member in zip(targets, chosen):
        result[slot] = member
    return result


class TestEvolveGeneration:
    @pytest.mark.parametrize("pid,helpers,lam", [
        ("g06", HelperSet.standard(2), 8),
        ("g08", HelperSet.standard(4), 5),
        ("g11", HelperSet.standard(6), 8),
        ("g12", HelperSet((Helper.VIOLATION,)), 3),
        ("g04", HelperSet.standard(4), 24),  # lam == mu boundary below
    ])
    def test_matches_reference_semantics(self, pid, helpers, lam):
        problem = get_problem(pid)
        config = SolverConfig(mu=24, lam=lam, fes_max=2000, helpers=helpers)
        state = init_state(problem, config, seed=1234)
        for _ in range(3):
            expected = reference_generation(
                [copy.deepcopy(i) for i in state.population], config, problem,
                clone_rng(state.rng))
            evolve_generation(state, config, problem)
            for got, want in zip(state.population, expected):
                assert np.array_equal(got.x, want.x)
                assert got.f == want.f and got.v == want.v
                assert np.array_equal(got.objectives, want.objectives)

    def test_lam_equals_mu_replaces_whole_population_subset(self):
        problem = get_problem("g12")
        config = SolverConfig(mu=12, lam=12, fes_max=1200)
        state = init_state(problem, config, seed=9)
        evolve_generation(state, config, problem)
        assert len(state.population) == 12
        assert state.fes == 24

    def test_identical_children_leave_population_unchanged(self):
        # constant objective, unconstrained: every vector scores the same, so
        # no child dominates anything and the subset survives untouched
        flat = toy_problem(lambda x: 1.0)
        config = SolverConfig(mu=10, lam=4, fes_max=1000, helpers=HelperSet.standard(6))
        state = init_state(flat, config, seed=5)
        before = [ind.x.copy() for ind in state.population]
        evolve_generation(state, config, flat)
        assert state.fes == 14
        for kept, old in zip(state.population, before):
            assert np.array_equal(kept.x, old)

    def test_single_objective_violation_mode_monotone(self):
        # m = 1 dominance is strict scalar less-than on the violation score
        problem = get_problem("g06")
        config = SolverConfig(mu=20, lam=6, fes_max=5000,
                              helpers=HelperSet((Helper.VIOLATION,)))
        state = init_state(problem, config, seed=3)
        worst = max(ind.v for ind in state.population)
        for _ in range(20):
            evolve_generation(state, config, problem)
            new_worst = max(ind.v for ind in state.population)
            assert new_worst <= worst or new_worst == worst
            worst = new_worst

    def test_population_size_invariant(self):
        problem = get_problem("g08")
        config = SolverConfig(mu=15, lam=7, fes_max=3000)
        state = init_state(problem, config, seed=21)
        for _ in range(30):
            evolve_generation(state, config, problem)
            assert len(state.population) == 15


class TestRun:
    def test_fes_accounting_exact(self):
        config = SolverConfig(mu=20, lam=7, fes_max=100)
        result = run(get_problem("g12"), config, seed=2)
        # 20 initial + 11 generations of 7 fills 97 of the 100 budget
        assert result.generations == 11
        assert result.fes == 20 + 11 * 7 == 97
        assert len(result.trace) == result.generations + 1

    def test_budget_equal_to_mu_runs_zero_generations(self):
        config = SolverConfig(mu=30, lam=5, fes_max=30)
        result = run(get_problem("g02"), config, seed=8)
        assert result.generations == 0 and result.fes == 30
        assert result.best_feasible is not None  # g02 box is almost all feasible

    def test_bitwise_deterministic(self):
        config = SolverConfig(mu=40, lam=8, fes_max=1500)
        a = run(get_problem("g06"), config, seed=77)
        b = run(get_problem("g06"), config, seed=77)
        assert a.trace == b.trace and a.fes == b.fes
        assert (a.best_feasible is None) == (b.best_feasible is None)
        if a.best_feasible is not None:
            assert np.array_equal(a.best_feasible.x, b.best_feasible.x)
            assert a.best_feasible.f == b.best_feasible.f

    def test_seeds_change_outcomes(self):
        config = SolverConfig(mu=40, lam=8, fes_max=1500)
        a = run(get_problem("g08"), config, seed=1)
        b = run(get_problem("g08"), config, seed=2)
        assert a.trace != b.trace

    def test_trace_is_non_increasing_once_feasible(self):
        config = SolverConfig(mu=60, lam=8, fes_max=4000)
        result = run(get_problem("g08"), config, seed=13)
        seen = [t for t in result.trace if t is not None]
        assert seen, "feasible points expected on g08"
        assert all(b <= a for a, b in zip(seen, seen[1:]))
        # None entries only form a prefix
        first = result.trace.index(seen[0])
        assert all(t is None for t in result.trace[:first])

    def test_all_evaluated_points_inside_bounds(self):
        base = get_problem("g06")
        seen = []

        def recording_objective(x):
            seen.append(x.copy())
            return base.objective(x)

        recorder = ConstrainedProblem(
            id=base.id, dimension=base.dimension, bounds=base.bounds,
            objective=recording_objective, inequalities=base.inequalities,
            equalities=base.equalities, best_known=base.best_known,
            optimum=base.optimum)
        config = SolverConfig(mu=25, lam=8, fes_max=1200)
        result = run(recorder, config, seed=31)
        assert len(seen) == result.fes
        points = np.array(seen)
        assert np.all(points >= base.bounds.lower) and np.all(points <= base.bounds.upper)

    def test_feasible_rule_mode_converges_on_g06(self):
        # single-score sanity corridor: the feasible-rule helper alone turns
        # dominance into the scalar feasibility-rule order
        problem = get_problem("g06")
        config = SolverConfig(mu=180, lam=8, fes_max=50_000,
                              helpers=HelperSet((Helper.FEASIBLE_RULE,)))
        result = run(problem, config, seed=11)
        assert result.best_feasible is not None
        assert result.best_feasible.f - problem.best_known <= 1.0


class TestArchive:
    def feasible_child(self):
        return EvaluatedIndividual(x=np.zeros(2), f=1.0, v=0.0)

    def infeasible_child(self, v):
        return EvaluatedIndividual(x=np.zeros(2), f=1.0, v=v)

    def fresh_state(self, generation=1):
        pop = [EvaluatedIndividual(x=np.full(2, float(i)), f=float(i), v=0.0)
               for i in range(6)]
        return SolverState(population=pop, fes=6, generation=generation,
                           rng=make_rng(5))

    def test_disabled_is_identity(self):
        config = SolverConfig(mu=6, lam=2, fes_max=600, archive_enabled=False)
        state = self.fresh_state()
        before = [ind.x.copy() for ind in state.population]
        archive_step(state, [self.infeasible_child(0.5)], config)
        assert state.archive == []
        assert all(np.array_equal(a.x, b) for a, b in zip(state.population, before))

    def test_feasible_child_blocks_collection(self):
        config = SolverConfig(mu=6, lam=2, fes_max=600, archive_enabled=True)
        state = self.fresh_state()
        archive_step(state, [self.feasible_child(), self.infeasible_child(0.5)], config)
        assert state.archive == []

    def test_all_infeasible_brood_archives_lowest_violation(self):
        config = SolverConfig(mu=6, lam=2, fes_max=600, archive_enabled=True)
        state = self.fresh_state()
        children = [self.infeasible_child(0.9), self.infeasible_child(0.2),
                    self.infeasible_child(0.4)]
        archive_step(state, children, config)
        assert len(state.archive) == 1 and state.archive[0].v == 0.2

    def test_empty_archive_at_interval_is_noop(self):
        config = SolverConfig(mu=6, lam=2, fes_max=600, archive_enabled=True,
                              archive_interval=1)
        state = self.fresh_state(generation=1)
        before = [ind.x.copy() for ind in state.population]
        archive_step(state, [self.feasible_child()], config)
        assert all(np.array_equal(a.x, b) for a, b in zip(state.population, before))

    def test_interval_reinjects_and_clears(self):
        config = SolverConfig(mu=6, lam=2, fes_max=600, archive_enabled=True,
                              archive_interval=1, archive_count=2)
        state = self.fresh_state(generation=1)
        marked = [EvaluatedIndividual(x=np.full(2, -99.0), f=9.0, v=3.0),
                  EvaluatedIndividual(x=np.full(2, -98.0), f=9.0, v=4.0),
                  EvaluatedIndividual(x=np.full(2, -97.0), f=9.0, v=5.0)]
        state.archive.extend(marked)
        archive_step(state, [self.feasible_child()], config)
        assert state.archive == []
        injected = [ind for ind in state.population if ind.x[0] <= -97.0]
        assert len(injected) == 2

    def test_enabled_run_still_deterministic(self):
        config = SolverConfig(mu=30, lam=6, fes_max=1500, archive_enabled=True,
                              archive_interval=5, archive_count=2)
        a = run(get_problem("g10"), config, seed=19)
        b = run(get_problem("g10"), config, seed=19)
        assert a.trace == b.trace


class TestGreedyBaseline:
    def test_fes_accounting_per_generation_is_mu(self):
        config = SolverConfig(mu=20, lam=8, fes_max=100)
        result = run_greedy(get_problem("g12"), config, seed=4)
        assert result.generations == 4
        assert result.fes == 20 + 4 * 20

    def test_deterministic(self):
        config = SolverConfig(mu=20, lam=8, fes_max=800)
        a = run_greedy(get_problem("g06"), config, seed=42)
        b = run_greedy(get_problem("g06"), config, seed=42)
        assert a.trace == b.trace

    def test_population_never_worsens_per_slot(self):
        problem = get_problem("g08")
        config = SolverConfig(mu=16, lam=8, fes_max=2000)
        state = init_state(problem, config, seed=15)
        result = run_greedy(problem, config, seed=15)
        assert result.best_feasible is not None
        trace = [t for t in result.trace if t is not None]
        assert all(b <= a for a, b in zip(trace, trace[1:]))
