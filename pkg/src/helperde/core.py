"""Shared domain types: box bounds, evaluated individuals, seeded RNG streams."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Every stochastic operation takes an explicit generator; there is no hidden
# global randomness. Identical seeds give bit-identical runs.
RngStream = np.random.Generator


def make_rng(seed: int) -> RngStream:
    """Create a deterministic random stream from a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Bounds:
    """Inclusive box bounds for the decision space.

    Both ends are inclusive: uniform initialization can produce a coordinate
    exactly equal to the lower bound.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-d arrays of equal length")
        if lower.size < 1:
            raise ValueError("bounds must have at least one dimension")
        if np.any(lower > upper):
            raise ValueError("lower[i] must not exceed upper[i]")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower


def random_point(bounds: Bounds, rng: RngStream) -> np.ndarray:
    """Draw a point uniformly from the box, coordinate-wise.

    x_i = lower_i + (upper_i - lower_i) * u with u uniform in [0, 1).
    """
    return bounds.lower + bounds.span * rng.random(bounds.dimension)


def clip_check(x: np.ndarray, bounds: Bounds) -> bool:
    """True iff every coordinate of x lies inside the box (inclusive)."""
    if x.shape != bounds.lower.shape:
        raise ValueError(
            f"dimension mismatch: point has {x.shape}, bounds have {bounds.lower.shape}"
        )
    return bool(np.all(x >= bounds.lower) and np.all(x <= bounds.upper))


@dataclass
class EvaluatedIndividual:
    """A decision vector with its cached raw objective, total violation and
    per-helper objective values.

    `objectives` is population-relative (the feasible-rule helper depends on
    the worst feasible objective in the hosting population) and is refreshed
    by the engine every generation before any dominance comparison.
    """

    x: np.ndarray
    f: float
    v: float
    objectives: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def feasible(self) -> bool:
        return self.v == 0.0
