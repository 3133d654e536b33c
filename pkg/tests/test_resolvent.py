"""Tests for the power bound, the sup optimizer, and the Wiener-route bound."""

import math

import numpy as np
import pytest

from kreissbounds import linalg, resolvent
from kreissbounds.errors import SpectrumOnCircle
from kreissbounds.gallery import (cot_matrix, jordan_nilpotent, mobius_of_nilpotent,
                                  random_contraction, random_spectrum)
from kreissbounds.resolvent import (Iterated, Kreiss, Strong, lemma2_bound,
                                    power_bound, scaling_reduction_check,
                                    sup_weighted_resolvent)

GOLDEN = (1 + math.sqrt(5)) / 2


class TestPowerBound:
    def test_zero(self):
        pb = power_bound(np.zeros((3, 3), dtype=complex))
        assert pb.value == 1.0 and pb.k_attained == 0 and pb.certified

    def test_shift_is_contraction(self):
        pb = power_bound(jordan_nilpotent(5))
        assert pb.value == 1.0

    def test_mobius_contraction(self):
        for r in (0.3, 0.9):
            pb = power_bound(mobius_of_nilpotent(6, r))
            assert pb.value <= 1.0 + 1e-9

    def test_growth_flagged_unbounded(self):
        pb = power_bound(1.1 * np.eye(2, dtype=complex))
        assert math.isinf(pb.value)
        assert not pb.certified

    def test_transient_growth_then_decay(self):
        # non-normal with r < 1: finite P larger than 1, certified
        T = np.array([[0.5, 4.0], [0.0, 0.5]], dtype=complex)
        pb = power_bound(T)
        assert pb.certified
        norms = linalg.matrix_power_norms(T, "l2", 40)
        assert abs(pb.value - norms.max()) < 1e-9 * pb.value
        assert pb.k_attained == int(np.argmax(norms))


class TestSupOptimizer:
    def test_zero_classic(self):
        res = sup_weighted_resolvent(np.zeros((1, 1), dtype=complex), "l2", Kreiss(1.0))
        # (x-1)/x increases to 1; the limit wins, argmax reported at the grid edge
        assert abs(res.value - 1.0) < 1e-9
        assert res.at_infinity and res.converged
        assert abs(res.argmax) > 100.0

    def test_zero_fractional(self):
        # maximize (x-1)^(1/2)/x: stationary at x = 2, value 1/2
        res = sup_weighted_resolvent(np.zeros((1, 1), dtype=complex), "l2", Kreiss(0.5))
        assert abs(res.value - 0.5) < 1e-7
        assert abs(abs(res.argmax) - 2.0) < 1e-5

    def test_normal_strong_is_one(self):
        res = sup_weighted_resolvent(np.diag([0.9 + 0j, -0.4, 0.2j]), "l2", Strong(1))
        assert abs(res.value - 1.0) < 1e-6

    def test_jordan_strong_golden_ratio(self):
        res = sup_weighted_resolvent(jordan_nilpotent(2), "l2", Strong(1))
        assert abs(res.value - GOLDEN) < 1e-6 * GOLDEN
        assert abs(abs(res.argmax) - 1.0) < 1e-9  # attained on the circle

    def test_jordan_strong_brute_force_oracle(self):
        # dense direct evaluation confirms the circle attains the sup
        T = jordan_nilpotent(2)
        best = 0.0
        for s in np.concatenate([[0.0], np.geomspace(1e-6, 30, 60)]):
            for th in np.linspace(0, 2 * np.pi, 120, endpoint=False):
                lam = (1 + s) * np.exp(1j * th)
                val = abs(lam) ** 1 * resolvent._point_norm(T, lam, 1, "l2")
                best = max(best, val)
        res = sup_weighted_resolvent(T, "l2", Strong(1))
        assert res.value >= best - 1e-6 * best

    def test_divergence_dichotomy(self):
        assert math.isinf(sup_weighted_resolvent(cot_matrix(4), "l2", Kreiss(0.5)).value)
        assert math.isinf(sup_weighted_resolvent(cot_matrix(4), "l2", Iterated(2, 0.5)).value)
        finite = sup_weighted_resolvent(mobius_of_nilpotent(4, 0.95), "l2", Kreiss(0.5))
        assert math.isfinite(finite.value)

    def test_contraction_classic_is_exactly_one(self):
        # rho <= P = 1 and rho >= limit 1
        res = sup_weighted_resolvent(random_contraction(6, 17), "l2", Kreiss(1.0))
        assert abs(res.value - 1.0) < 1e-9

    def test_value_dominates_argmax_objective(self):
        T = random_spectrum(5, 0.9, 21)
        res = sup_weighted_resolvent(T, "l2", Kreiss(0.5))
        s = abs(res.argmax) - 1.0
        val = s ** 0.5 * resolvent._point_norm(T, res.argmax, 1, "l2")
        assert res.value >= val - 1e-9

    def test_rho_below_power_bound(self):
        for seed in range(5):
            T = random_spectrum(4, 0.8, seed)
            P = power_bound(T).value
            rho = sup_weighted_resolvent(T, "l2", Kreiss(1.0)).value
            assert rho <= P + 1e-6 * P

    def test_strong_dominates_classic(self):
        for seed in range(3):
            T = random_spectrum(4, 0.8, seed + 50)
            rho = sup_weighted_resolvent(T, "l2", Kreiss(1.0)).value
            strong = sup_weighted_resolvent(T, "l2", Strong(1)).value
            assert strong >= rho - 1e-9

    def test_alpha_monotonicity_at_argmax(self):
        # for |argmax_2| <= 2 the smaller exponent weights that point more
        T = random_spectrum(5, 0.9, 33)
        res2 = sup_weighted_resolvent(T, "l2", Kreiss(0.75))
        if res2.argmax is not None and abs(res2.argmax) <= 2.0:
            res1 = sup_weighted_resolvent(T, "l2", Kreiss(0.25))
            s = abs(res2.argmax) - 1.0
            val_at = s ** 0.25 * resolvent._point_norm(T, res2.argmax, 1, "l2")
            assert res1.value >= val_at - 1e-9

    def test_iterated_alpha_one_is_hyc(self):
        T = random_spectrum(3, 0.7, 40)
        res = sup_weighted_resolvent(T, "l2", Iterated(2, 1.0))
        assert math.isfinite(res.value)
        # at the reported argmax the objective matches (|z|-1)^2 ||R^2||
        s = abs(res.argmax) - 1.0 if res.argmax is not None else None
        if s is not None and s > 0:
            val = s ** 2 * resolvent._point_norm(T, res.argmax, 2, "l2")
            assert res.value >= val - 1e-9


class TestLemma2Bound:
    def test_scalar_zero_exact(self):
        # n = 1, sigma = {0}: projection is the constant 1, bound = 1/|lam|
        assert abs(lemma2_bound(np.zeros((1, 1), dtype=complex), 2.0, 1) - 0.5) < 1e-12

    def test_diag_half(self):
        T = np.diag([0.5 + 0j])
        bound = lemma2_bound(T, 2.0, 1)
        direct = linalg.operator_norm(linalg.resolvent_power(T, 2.0, 1), "l2")
        assert direct == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert bound >= direct - 1e-12

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_dominates_direct_norm(self, l):
        for seed in range(8):
            T = random_spectrum(1 + seed % 5, 0.9, seed + 100)
            for lam in (1.3, 2.0 + 1.0j, -2.5):
                bound = lemma2_bound(T, lam, l)
                direct = linalg.operator_norm(linalg.resolvent_power(T, lam, l), "l2")
                assert bound >= direct - 1e-8 * bound

    def test_requires_interior_spectrum(self):
        with pytest.raises(SpectrumOnCircle):
            lemma2_bound(np.eye(2, dtype=complex), 2.0, 1)


class TestScalingReduction:
    def test_zero_exact(self):
        rec = scaling_reduction_check(np.zeros((2, 2), dtype=complex), 1.7 + 0.2j, 1)
        assert rec.lhs < 1e-12 and rec.passed

    def test_random_instances(self):
        rng = np.random.default_rng(77)
        for seed in range(10):
            T = random_spectrum(4, 0.9, seed + 200)
            lam = (1.0 + rng.uniform(0.01, 2.0)) * np.exp(2j * np.pi * rng.uniform())
            rec = scaling_reduction_check(T, complex(lam), 1)
            assert rec.lhs <= 1e-9

    def test_jordan_l3(self):
        rec = scaling_reduction_check(jordan_nilpotent(4), 1.4, 3)
        assert rec.lhs <= 1e-8 and rec.passed
