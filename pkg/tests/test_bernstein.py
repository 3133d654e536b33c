"""Tests for the Bernstein-constant lower-bound search."""

import math

import pytest

from kreissbounds.bernstein import bernstein_lower_search, conjectured_h2_slope
from kreissbounds.bounds import thmA_constant


class TestSearch:
    def test_single_pole_oracle(self):
        # n = 1: ratio of 1/(z-a) is 1/(1+|a|), so the class sup is r/(1+r)
        res = bernstein_lower_search(1, 0.5, math.inf, budget=400, seed=0)
        assert res.best_ratio == pytest.approx(0.5 / 1.5, rel=1e-6)
        assert res.upper_bound == 1.0

    @pytest.mark.parametrize("n,r,p", [(2, 0.5, 1.0), (3, 0.9, 2.0), (2, 0.5, math.inf)])
    def test_soundness_against_thmA(self, n, r, p):
        res = bernstein_lower_search(n, r, p, budget=600, seed=1)
        assert res.best_ratio <= thmA_constant(n, r, p) * (1 + 1e-6)
        assert res.witness.in_class(n, r)

    def test_polynomial_class(self):
        res = bernstein_lower_search(3, 0.0, math.inf, budget=400, seed=2)
        assert res.best_ratio <= 3.0 * (1 + 1e-6)
        assert not res.witness.poles

    def test_monotone_in_budget(self):
        small = bernstein_lower_search(2, 0.5, 2.0, budget=200, seed=5)
        large = bernstein_lower_search(2, 0.5, 2.0, budget=800, seed=5)
        assert large.best_ratio >= small.best_ratio - 1e-12

    def test_deterministic(self):
        a = bernstein_lower_search(2, 0.5, 1.0, budget=300, seed=9)
        b = bernstein_lower_search(2, 0.5, 1.0, budget=300, seed=9)
        assert a.best_ratio == b.best_ratio
        assert a.evaluations == b.evaluations

    def test_h2_mode_reports(self):
        res = bernstein_lower_search(4, 0.5, 2.0, budget=400, seed=3, mode="h2")
        assert res.best_ratio > 0
        assert math.isinf(res.upper_bound)
        assert conjectured_h2_slope(0.5) == pytest.approx(3.0)

    def test_budget_floor(self):
        with pytest.raises(ValueError):
            bernstein_lower_search(2, 0.5, 1.0, budget=50)
