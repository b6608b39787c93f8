import numpy as np
import pytest

from helperde.core import Bounds, clip_check, make_rng, random_point


class ScriptedRng:
    """Stand-in generator returning a fixed sequence of uniform draws."""

    def __init__(self, draws):
        self.draws = list(draws)

    def random(self, n):
        out = np.array(self.draws[:n], dtype=float)
        self.draws = self.draws[n:]
        return out


class TestBounds:
    def test_valid_box(self):
        b = Bounds(np.array([0.0, -1.0]), np.array([1.0, 1.0]))
        assert b.dimension == 2
        assert np.array_equal(b.span, [1.0, 2.0])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            Bounds(np.zeros(2), np.ones(3))

    def test_rejects_inverted_interval(self):
        with pytest.raises(ValueError):
            Bounds(np.array([0.0, 2.0]), np.array([1.0, 1.0]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Bounds(np.array([]), np.array([]))

    def test_degenerate_interval_allowed(self):
        b = Bounds(np.zeros(2), np.zeros(2))
        assert b.dimension == 2


class TestRandomPoint:
    def test_degenerate_box_is_deterministic(self):
        b = Bounds(np.zeros(2), np.zeros(2))
        x = random_point(b, make_rng(123))
        assert np.array_equal(x, [0.0, 0.0])

    def test_affine_map_of_unit_draw(self):
        b = Bounds(np.array([-1.0]), np.array([1.0]))
        assert random_point(b, ScriptedRng([0.5])) == pytest.approx([0.0])

        b2 = Bounds(np.array([2.0, 3.0]), np.array([4.0, 9.0]))
        x = random_point(b2, ScriptedRng([0.25, 0.5]))
        assert x == pytest.approx([2.5, 6.0])

    def test_stays_in_box(self):
        b = Bounds(np.array([-3.0, 5.0]), np.array([-1.0, 50.0]))
        rng = make_rng(7)
        for _ in range(1000):
            assert clip_check(random_point(b, rng), b)

    def test_mean_near_midpoint(self):
        # 3 standard errors of the uniform mean over 1e5 draws, per coordinate
        b = Bounds(np.array([0.0, -4.0]), np.array([2.0, 10.0]))
        rng = make_rng(2024)
        draws = np.array([random_point(b, rng) for _ in range(100_000)])
        midpoint = (b.lower + b.upper) / 2.0
        stderr = b.span / np.sqrt(12.0) / np.sqrt(draws.shape[0])
        assert np.all(np.abs(draws.mean(axis=0) - midpoint) < 3.0 * stderr)


class TestRngStream:
    def test_equal_seeds_equal_sequences(self):
        a, b = make_rng(99), make_rng(99)
        assert np.array_equal(a.random(64), b.random(64))
        assert np.array_equal(a.integers(1000, size=64), b.integers(1000, size=64))

    def test_different_seeds_differ(self):
        assert not np.array_equal(make_rng(1).random(16), make_rng(2).random(16))


class TestClipCheck:
    def test_inside(self):
        b = Bounds(np.array([0.0]), np.array([1.0]))
        assert clip_check(np.array([0.5]), b)

    def test_boundary_is_inclusive(self):
        b = Bounds(np.array([0.0]), np.array([1.0]))
        assert clip_check(np.array([1.0]), b)
        assert clip_check(np.array([0.0]), b)

    def test_outside(self):
        b = Bounds(np.array([0.0]), np.array([1.0]))
        assert not clip_check(np.array([1.0001]), b)

    def test_dimension_mismatch(self):
        b = Bounds(np.zeros(2), np.ones(2))
        with pytest.raises(ValueError):
            clip_check(np.array([0.5]), b)
