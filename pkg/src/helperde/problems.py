"""The g01-g13 constrained benchmark problems with metadata and known optima.

Formulas, box bounds, best-known objective values and published optimal
points follow the CEC 2006 constrained real-parameter optimization problem
definitions. Problems are minimized; inequality constraints are satisfied
when g(x) <= 0, equality constraints when |h(x)| <= delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import Bounds

Evaluator = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class ConstrainedProblem:
    """A box-bounded minimization problem with explicit constraint evaluators.

    Evaluators are pure functions of the decision vector. `optimum` is the
    published best-known point; `best_known` its objective value, used as
    the reference when reporting error values.
    """

    id: str
    dimension: int
    bounds: Bounds
    objective: Evaluator
    inequalities: tuple[Evaluator, ...]
    equalities: tuple[Evaluator, ...]
    best_known: float
    optimum: np.ndarray


@dataclass(frozen=True)
class ProblemMeta:
    """Benchmark catalog metadata.

    rho is the estimated feasible fraction of the search box in percent;
    li/ne/ni count linear inequality, nonlinear equality and nonlinear
    inequality constraints; active_count is the number of constraints
    active at the optimum.
    """

    dimension: int
    objective_type: str  # "linear" | "quadratic" | "nonlinear"
    rho: float
    li: int
    ne: int
    ni: int
    active_count: int


def evaluate_raw(problem: ConstrainedProblem, x: np.ndarray):
    """Raw objective and constraint values at x, with no penalty applied.

    Returns (f, g, h) where g and h hold the inequality and equality
    constraint values. One call corresponds to one fitness evaluation of
    the budget. Raises on dimension mismatch or a non-finite objective.
    """
    if len(x) != problem.dimension:
        raise ValueError(f"{problem.id} expects dimension {problem.dimension}, got {len(x)}")
    f = float(problem.objective(x))
    if not np.isfinite(f):
        raise ValueError(f"{problem.id} produced a non-finite objective at {x!r}")
    g = np.array([gi(x) for gi in problem.inequalities], dtype=float)
    h = np.array([hj(x) for hj in problem.equalities], dtype=float)
    return f, g, h


# ---------------------------------------------------------------------------
# problem definitions
# ---------------------------------------------------------------------------

def _build_g01():
    def f(x):
        return 5.0 * x[:4].sum() - 5.0 * (x[:4] ** 2).sum() - x[4:13].sum()

    ineqs = (
        lambda x: 2 * x[0] + 2 * x[1] + x[9] + x[10] - 10,
        lambda x: 2 * x[0] + 2 * x[2] + x[9] + x[11] - 10,
        lambda x: 2 * x[1] + 2 * x[2] + x[10] + x[11] - 10,
        lambda x: -8 * x[0] + x[9],
        lambda x: -8 * x[1] + x[10],
        lambda x: -8 * x[2] + x[11],
        lambda x: -2 * x[3] - x[4] + x[9],
        lambda x: -2 * x[5] - x[6] + x[10],
        lambda x: -2 * x[7] - x[8] + x[11],
    )
    lower = np.zeros(13)
    upper = np.ones(13)
    upper[9:12] = 100.0
    return ConstrainedProblem(
        id="g01", dimension=13, bounds=Bounds(lower, upper),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=-15.0,
        optimum=np.array([1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 1], dtype=float),
    ), ProblemMeta(13, "quadratic", 0.0003, 9, 0, 0, 6)


def _build_g02():
    idx = np.arange(1, 21, dtype=float)

    def f(x):
        c = np.cos(x)
        num = (c ** 4).sum() - 2.0 * (c ** 2).prod()
        den = np.sqrt((idx * x ** 2).sum())
        return -abs(num) / den

    ineqs = (
        lambda x: 0.75 - np.prod(x),
        lambda x: x.sum() - 7.5 * 20,
    )
    return ConstrainedProblem(
        id="g02", dimension=20, bounds=Bounds(np.zeros(20), np.full(20, 10.0)),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=-0.8036191042,
        optimum=np.array([
            3.16246061572185, 3.12833142812967, 3.09479212988791, 3.06145059523469,
            3.02792915885555, 2.99382606701730, 2.95866871765285, 2.92184227312450,
            0.49482511456933, 0.48835711005490, 0.48231642711865, 0.47664475092742,
            0.47129550835493, 0.46623099264167, 0.46142004984199, 0.45683664767217,
            0.45245876903267, 0.44826762241853, 0.44424700958760, 0.44038285956317,
        ]),
    ), ProblemMeta(20, "nonlinear", 99.9965, 1, 0, 1, 1)


def _build_g03():
    scale = np.sqrt(10.0) ** 10

    def f(x):
        return -scale * np.prod(x)

    eqs = (lambda x: (x ** 2).sum() - 1.0,)
    return ConstrainedProblem(
        id="g03", dimension=10, bounds=Bounds(np.zeros(10), np.ones(10)),
        objective=f, inequalities=(), equalities=eqs,
        best_known=-1.0005001000,
        optimum=np.array([
            0.31624357647283069, 0.316243577414338339, 0.316243578012345927,
            0.316243575664017895, 0.316243578205526066, 0.31624357738855069,
            0.316243575472949512, 0.316243577164883938, 0.316243578155920302,
            0.316243576147374916,
        ]),
    ), ProblemMeta(10, "nonlinear", 0.0000, 0, 1, 0, 1)


def _build_g04():
    def f(x):
        return (5.3578547 * x[2] ** 2 + 0.8356891 * x[0] * x[4]
                + 37.293239 * x[0] - 40792.141)

    ineqs = (
        lambda x: 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3]
        - 0.0022053 * x[2] * x[4] - 92.0,
        lambda x: -85.334407 - 0.0056858 * x[1] * x[4] - 0.0006262 * x[0] * x[3]
        + 0.0022053 * x[2] * x[4],
        lambda x: 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1]
        + 0.0021813 * x[2] ** 2 - 110.0,
        lambda x: -80.51249 - 0.0071317 * x[1] * x[4] - 0.0029955 * x[0] * x[1]
        - 0.0021813 * x[2] ** 2 + 90.0,
        lambda x: 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2]
        + 0.0019085 * x[2] * x[3] - 25.0,
        lambda x: -9.300961 - 0.0047026 * x[2] * x[4] - 0.0012547 * x[0] * x[2]
        - 0.0019085 * x[2] * x[3] + 20.0,
    )
    return ConstrainedProblem(
        id="g04", dimension=5,
        bounds=Bounds(np.array([78.0, 33, 27, 27, 27]), np.array([102.0, 45, 45, 45, 45])),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=-30665.5386717834,
        optimum=np.array([78.0, 33.0, 29.9952560256815985, 45.0, 36.7758129057882073]),
    ), ProblemMeta(5, "quadratic", 29.9356, 0, 0, 6, 2)


def _build_g05():
    def f(x):
        return (3.0 * x[0] + 0.000001 * x[0] ** 3 + 2.0 * x[1]
                + (0.000002 / 3.0) * x[1] ** 3)

    ineqs = (
        lambda x: -x[3] + x[2] - 0.55,
        lambda x: -x[2] + x[3] - 0.55,
    )
    eqs = (
        lambda x: 1000 * np.sin(-x[2] - 0.25) + 1000 * np.sin(-x[3] - 0.25) + 894.8 - x[0],
        lambda x: 1000 * np.sin(x[2] - 0.25) + 1000 * np.sin(x[2] - x[3] - 0.25) + 894.8 - x[1],
        lambda x: 1000 * np.sin(x[3] - 0.25) + 1000 * np.sin(x[3] - x[2] - 0.25) + 1294.8,
    )
    return ConstrainedProblem(
        id="g05", dimension=4,
        bounds=Bounds(np.array([0.0, 0, -0.55, -0.55]), np.array([1200.0, 1200, 0.55, 0.55])),
        objective=f, inequalities=ineqs, equalities=eqs,
        best_known=5126.4967140071,
        optimum=np.array([679.945148297028709, 1026.06697600004691,
                          0.118876369094410433, -0.39623348521517826]),
    ), ProblemMeta(4, "nonlinear", 0.0000, 2, 3, 0, 3)


def _build_g06():
    def f(x):
        return (x[0] - 10.0) ** 3 + (x[1] - 20.0) ** 3

    ineqs = (
        lambda x: -((x[0] - 5) ** 2) - (x[1] - 5) ** 2 + 100.0,
        lambda x: (x[0] - 6) ** 2 + (x[1] - 5) ** 2 - 82.81,
    )
    return ConstrainedProblem(
        id="g06", dimension=2,
        bounds=Bounds(np.array([13.0, 0.0]), np.array([100.0, 100.0])),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=-6961.8138755802,
        optimum=np.array([14.09500000000000064, 0.8429607892154795668]),
    ), ProblemMeta(2, "nonlinear", 0.0064, 0, 0, 2, 2)


def _build_g07():
    def f(x):
        return (x[0] ** 2 + x[1] ** 2 + x[0] * x[1] - 14 * x[0] - 16 * x[1]
                + (x[2] - 10) ** 2 + 4 * (x[3] - 5) ** 2 + (x[4] - 3) ** 2
                + 2 * (x[5] - 1) ** 2 + 5 * x[6] ** 2 + 7 * (x[7] - 11) ** 2
                + 2 * (x[8] - 10) ** 2 + (x[9] - 7) ** 2 + 45.0)

    ineqs = (
        lambda x: -105 + 4 * x[0] + 5 * x[1] - 3 * x[6] + 9 * x[7],
        lambda x: 10 * x[0] - 8 * x[1] - 17 * x[6] + 2 * x[7],
        lambda x: -8 * x[0] + 2 * x[1] + 5 * x[8] - 2 * x[9] - 12,
        lambda x: 3 * (x[0] - 2) ** 2 + 4 * (x[1] - 3) ** 2 + 2 * x[2] ** 2 - 7 * x[3] - 120,
        lambda x: 5 * x[0] ** 2 + 8 * x[1] + (x[2] - 6) ** 2 - 2 * x[3] - 40,
        lambda x: x[0] ** 2 + 2 * (x[1] - 2) ** 2 - 2 * x[0] * x[1] + 14 * x[4] - 6 * x[5],
        lambda x: 0.5 * (x[0] - 8) ** 2 + 2 * (x[1] - 4) ** 2 + 3 * x[4] ** 2 - x[5] - 30,
        lambda x: -3 * x[0] + 6 * x[1] + 12 * (x[8] - 8) ** 2 - 7 * x[9],
    )
    return ConstrainedProblem(
        id="g07", dimension=10,
        bounds=Bounds(np.full(10, -10.0), np.full(10, 10.0)),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=24.3062090681,
        optimum=np.array([
            2.17199634142692, 2.3636830416034, 8.77392573913157, 5.09598443745173,
            0.990654756560493, 1.43057392853463, 1.32164415364306, 9.82872576524495,
            8.2800915887356, 8.3759266477347,
        ]),
    ), ProblemMeta(10, "quadratic", 0.0003, 3, 0, 5, 6)


def _build_g08():
    two_pi = 2.0 * np.pi

    def f(x):
        return -(np.sin(two_pi * x[0]) ** 3 * np.sin(two_pi * x[1])
                 / (x[0] ** 3 * (x[0] + x[1])))

    ineqs = (
        lambda x: x[0] ** 2 - x[1] + 1.0,
        lambda x: 1.0 - x[0] + (x[1] - 4.0) ** 2,
    )
    return ConstrainedProblem(
        id="g08", dimension=2,
        bounds=Bounds(np.zeros(2), np.full(2, 10.0)),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=-0.0958250415,
        optimum=np.array([1.22797135260752599, 4.24537336612274885]),
    ), ProblemMeta(2, "nonlinear", 0.8640, 0, 0, 2, 0)


def _build_g09():
    def f(x):
        return ((x[0] - 10) ** 2 + 5 * (x[1] - 12) ** 2 + x[2] ** 4
                + 3 * (x[3] - 11) ** 2 + 10 * x[4] ** 6 + 7 * x[5] ** 2
                + x[6] ** 4 - 4 * x[5] * x[6] - 10 * x[5] - 8 * x[6])

    ineqs = (
        lambda x: -127 + 2 * x[0] ** 2 + 3 * x[1] ** 4 + x[2] + 4 * x[3] ** 2 + 5 * x[4],
        lambda x: -282 + 7 * x[0] + 3 * x[1] + 10 * x[2] ** 2 + x[3] - x[4],
        lambda x: -196 + 23 * x[0] + x[1] ** 2 + 6 * x[5] ** 2 - 8 * x[6],
        lambda x: 4 * x[0] ** 2 + x[1] ** 2 - 3 * x[0] * x[1] + 2 * x[2] ** 2 + 5 * x[5] - 11 * x[6],
    )
    return ConstrainedProblem(
        id="g09", dimension=7,
        bounds=Bounds(np.full(7, -10.0), np.full(7, 10.0)),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=680.6300573745,
        optimum=np.array([
            2.33049935147405174, 1.95137236847114592, -0.477541399510615805,
            4.36572624923625874, -0.624486959100388983, 1.03813099410962173,
            1.5942266780671519,
        ]),
    ), ProblemMeta(7, "nonlinear", 0.5256, 0, 0, 4, 2)


def _build_g10():
    def f(x):
        return x[0] + x[1] + x[2]

    ineqs = (
        lambda x: -1.0 + 0.0025 * (x[3] + x[5]),
        lambda x: -1.0 + 0.0025 * (x[4] + x[6] - x[3]),
        lambda x: -1.0 + 0.01 * (x[7] - x[4]),
        lambda x: -x[0] * x[5] + 833.33252 * x[3] + 100.0 * x[0] - 83333.333,
        lambda x: -x[1] * x[6] + 1250.0 * x[4] + x[1] * x[3] - 1250.0 * x[3],
        lambda x: -x[2] * x[7] + 1250000.0 + x[2] * x[4] - 2500.0 * x[4],
    )
    return ConstrainedProblem(
        id="g10", dimension=8,
        bounds=Bounds(np.array([100.0, 1000, 1000, 10, 10, 10, 10, 10]),
                      np.array([10000.0, 10000, 10000, 1000, 1000, 1000, 1000, 1000])),
        objective=f, inequalities=ineqs, equalities=(),
        best_known=7049.2480205286,
        optimum=np.array([
            579.306685017979589, 1359.97067807935605, 5109.97065743133317,
            182.01769963061534, 295.601173702746792, 217.982300369384632,
            286.41652592786852, 395.60117370274673,
        ]),
    ), ProblemMeta(8, "linear", 0.0005, 3, 0, 3, 3)


def _build_g11():
    def f(x):
        return x[0] ** 2 + (x[1] - 1.0) ** 2

    eqs = (lambda x: x[1] - x[0] ** 2,)
    return ConstrainedProblem(
        id="g11", dimension=2,
        bounds=Bounds(np.full(2, -1.0), np.full(2, 1.0)),
        objective=f, inequalities=(), equalities=eqs,
        best_known=0.7499,
        optimum=np.array([-0.707036070037170616, 0.500000004333606807]),
    ), ProblemMeta(2, "quadratic", 0.0000, 0, 1, 0, 1)


# Integer grid points whose surrounding balls make up the g12 feasible set.
_G12_CENTERS = np.array(
    [(p, q, r) for p in range(1, 10) for q in range(1, 10) for r in range(1, 10)],
    dtype=float,
)


def _build_g12():
    def f(x):
        return -(100.0 - (x[0] - 5) ** 2 - (x[1] - 5) ** 2 - (x[2] - 5) ** 2) / 100.0

    # The catalog counts 9^3 disc constraints, one per integer center; the
    # point is feasible when inside at least one disc, so the whole
    # disjunction collapses to the minimum disc value as a single g <= 0.
    def nearest_disc(x):
        return float(((x - _G12_CENTERS) ** 2).sum(axis=1).min() - 0.0625)

    return ConstrainedProblem(
        id="g12", dimension=3,
        bounds=Bounds(np.zeros(3), np.full(3, 10.0)),
        objective=f, inequalities=(nearest_disc,), equalities=(),
        best_known=-1.0,
        optimum=np.array([5.0, 5.0, 5.0]),
    ), ProblemMeta(3, "quadratic", 0.0197, 0, 0, 9 ** 3, 0)


def _build_g13():
    def f(x):
        return np.exp(x[0] * x[1] * x[2] * x[3] * x[4])

    eqs = (
        lambda x: (x ** 2).sum() - 10.0,
        lambda x: x[1] * x[2] - 5.0 * x[3] * x[4],
        lambda x: x[0] ** 3 + x[1] ** 3 + 1.0,
    )
    return ConstrainedProblem(
        id="g13", dimension=5,
        bounds=Bounds(np.array([-2.3, -2.3, -3.2, -3.2, -3.2]),
                      np.array([2.3, 2.3, 3.2, 3.2, 3.2])),
        objective=f, inequalities=(), equalities=eqs,
        best_known=0.0539415140,
        optimum=np.array([-1.71714224003, 1.59572124049468, 1.8272502406271,
                          -0.763659881912867, -0.76365986736498]),
    ), ProblemMeta(5, "nonlinear", 0.0000, 0, 3, 0, 3)


_BUILDERS = {
    "g01": _build_g01, "g02": _build_g02, "g03": _build_g03, "g04": _build_g04,
    "g05": _build_g05, "g06": _build_g06, "g07": _build_g07, "g08": _build_g08,
    "g09": _build_g09, "g10": _build_g10, "g11": _build_g11, "g12": _build_g12,
    "g13": _build_g13,
}

PROBLEM_IDS = tuple(sorted(_BUILDERS))

_CATALOG: dict[str, tuple[ConstrainedProblem, ProblemMeta]] = {}


def _catalog() -> dict[str, tuple[ConstrainedProblem, ProblemMeta]]:
    if not _CATALOG:
        for pid in PROBLEM_IDS:
            _CATALOG[pid] = _BUILDERS[pid]()
    return _CATALOG


def problem_catalog() -> list[tuple[ConstrainedProblem, ProblemMeta]]:
    """All thirteen benchmark problems with their metadata, in id order."""
    return [_catalog()[pid] for pid in PROBLEM_IDS]


def get_problem(problem_id: str) -> ConstrainedProblem:
    """Look up a benchmark problem by id ("g01".."g13")."""
    try:
        return _catalog()[problem_id][0]
    except KeyError:
        raise KeyError(f"unknown problem id {problem_id!r}; known: {', '.join(PROBLEM_IDS)}") from None


def get_meta(problem_id: str) -> ProblemMeta:
    """Catalog metadata of a benchmark problem."""
    try:
        return _catalog()[problem_id][1]
    except KeyError:
        raise KeyError(f"unknown problem id {problem_id!r}; known: {', '.join(PROBLEM_IDS)}") from None


def parse_problem_ids(spec: str | Sequence[str]) -> list[str]:
    """Expand a problem selection into a list of ids.

    Accepts "all", comma-separated ids, and inclusive ranges like
    "g03..g07"; a sequence of such tokens is flattened.
    """
    if isinstance(spec, str):
        tokens = [t for t in spec.split(",") if t]
    else:
        tokens = [t for item in spec for t in str(item).split(",") if t]
    ids: list[str] = []
    for token in tokens:
        token = token.strip()
        if token == "all":
            ids.extend(PROBLEM_IDS)
        elif ".." in token:
            first, _, last = token.partition("..")
            if first not in _BUILDERS or last not in _BUILDERS:
                raise KeyError(f"unknown problem range {token!r}")
            lo, hi = sorted((PROBLEM_IDS.index(first), PROBLEM_IDS.index(last)))
            ids.extend(PROBLEM_IDS[lo:hi + 1])
        else:
            if token not in _BUILDERS:
                raise KeyError(f"unknown problem id {token!r}; known: {', '.join(PROBLEM_IDS)}")
            ids.append(token)
    if not ids:
        raise ValueError("no problems selected")
    return ids
