"""Tests for the dense linear algebra layer."""

import json
import math

import numpy as np
import pytest

from kreissbounds import linalg
from kreissbounds.errors import SingularResolvent
from kreissbounds.gallery import cot_matrix, jordan_nilpotent, mobius_of_nilpotent, mobius_taylor

RNG = np.random.default_rng(20240801)


def random_complex(n, rng=RNG):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


class TestOperatorNorm:
    def test_identity_isometry(self):
        for norm in linalg.NORM_KINDS:
            assert abs(linalg.operator_norm(np.eye(5, dtype=complex), norm) - 1.0) < 1e-12

    def test_closed_form_2x2_l2(self):
        # Gram matrix of [[1,2],[0,1]] has eigenvalues 3 +- 2 sqrt(2)
        M = np.array([[1, 2], [0, 1]], dtype=complex)
        expected = math.sqrt(3 + 2 * math.sqrt(2))
        assert abs(expected - (1 + math.sqrt(2))) < 1e-14
        assert abs(linalg.operator_norm(M, "l2") - expected) < 1e-10

    def test_row_and_column_sums(self):
        M = np.array([[1, 2], [0, 1]], dtype=complex)
        assert linalg.operator_norm(M, "linf") == 3.0
        assert linalg.operator_norm(M, "l1") == 3.0

    @pytest.mark.parametrize("norm", linalg.NORM_KINDS)
    def test_submultiplicative(self, norm):
        rng = np.random.default_rng(7)
        for _ in range(20):
            A, B = random_complex(6, rng), random_complex(6, rng)
            lhs = linalg.operator_norm(A @ B, norm)
            rhs = linalg.operator_norm(A, norm) * linalg.operator_norm(B, norm)
            assert lhs <= rhs + 1e-9

    @pytest.mark.parametrize("norm", linalg.NORM_KINDS)
    def test_spectral_radius_below_norm(self, norm):
        rng = np.random.default_rng(8)
        for _ in range(20):
            A = random_complex(5, rng)
            assert linalg.spectrum(A).spectral_radius <= linalg.operator_norm(A, norm) + 1e-9


class TestSpectrum:
    def test_diagonal(self):
        sp = linalg.spectrum(np.diag([0.3, 0.5j]))
        assert abs(sp.spectral_radius - 0.5) < 1e-14
        vals = sorted(sp.eigenvalues, key=abs)
        assert abs(vals[0] - 0.3) < 1e-14
        assert abs(vals[1] - 0.5j) < 1e-14

    def test_nilpotent(self):
        sp = linalg.spectrum(jordan_nilpotent(4))
        assert sp.spectral_radius < 1e-8
        assert len(sp) == 4

    def test_mobius_constant_spectrum(self):
        sp = linalg.spectrum(mobius_of_nilpotent(3, 0.7))
        for z in sp.eigenvalues:
            assert abs(z - 0.7) < 1e-8

    def test_eigenvalue_residuals(self):
        # sigma_min(lambda I - M) small at every reported eigenvalue
        rng = np.random.default_rng(9)
        M = random_complex(8, rng)
        nrm = linalg.operator_norm(M, "l2")
        for lam in linalg.spectrum(M).eigenvalues:
            smin = np.linalg.svd(lam * np.eye(8) - M, compute_uv=False)[-1]
            assert smin <= 1e-9 * nrm

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            linalg.spectrum(np.zeros((513, 513), dtype=complex))


class TestMatrixPowerNorms:
    def test_zero_matrix(self):
        out = linalg.matrix_power_norms(np.zeros((3, 3), dtype=complex), "l2", 3)
        assert list(out) == [1.0, 0.0, 0.0, 0.0]

    def test_shift_partial_isometry(self):
        out = linalg.matrix_power_norms(jordan_nilpotent(3), "l2", 4)
        # direct computation: shift powers keep norm 1 until they vanish
        expected = [1.0, 1.0, 1.0, 0.0, 0.0]
        assert np.allclose(out, expected, atol=1e-12)

    def test_scaled_identity(self):
        out = linalg.matrix_power_norms(0.5 * np.eye(2, dtype=complex), "l2", 2)
        assert np.allclose(out, [1.0, 0.5, 0.25], atol=1e-12)

    def test_overflow_flag(self):
        out = linalg.matrix_power_norms(3.0 * np.eye(1, dtype=complex), "l2", 700)
        assert math.isinf(out[-1])
        # values below the 1e300 threshold stay finite
        assert math.isfinite(out[500])


class TestResolventPower:
    def test_zero_matrix(self):
        R = linalg.resolvent_power(np.zeros((4, 4), dtype=complex), 2.0, 3)
        assert np.allclose(R, np.eye(4) / 8.0, atol=1e-14)

    def test_nilpotent_neumann(self):
        # R = I + N for the 2x2 shift at lambda = 1 (finite Neumann series)
        R = linalg.resolvent_power(jordan_nilpotent(2), 1.0, 1)
        assert np.allclose(R, np.array([[1, 1], [0, 1]]), atol=1e-14)

    def test_neumann_bound(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            M = random_complex(5, rng)
            nrm = linalg.operator_norm(M, "l2")
            lam = nrm * 1.5 + 1.0
            R = linalg.resolvent_power(M, lam, 1)
            assert linalg.operator_norm(R, "l2") <= 1.0 / (lam - nrm) + 1e-9

    def test_singular_raises(self):
        with pytest.raises(SingularResolvent):
            linalg.resolvent_power(np.diag([0.5 + 0j, 0.2]), 0.5, 1)

    def test_power_consistency(self):
        rng = np.random.default_rng(4)
        M = random_complex(6, rng)
        lam = 2.0 + linalg.operator_norm(M, "l2")
        R1 = linalg.resolvent_power(M, lam, 1)
        for l in (2, 3):
            Rl = linalg.resolvent_power(M, lam, l)
            direct = np.linalg.matrix_power(R1, l)
            scale = linalg.operator_norm(R1, "l2") ** l
            assert np.abs(Rl - direct).max() <= 1e-9 * scale


class TestAnalyticOfNilpotent:
    def test_shift_itself(self):
        assert np.array_equal(linalg.analytic_of_nilpotent([0, 1, 0]), jordan_nilpotent(3))

    def test_cot_series(self):
        # (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
        taylor = [1] + [2] * 5
        assert np.array_equal(linalg.analytic_of_nilpotent(taylor), cot_matrix(6))

    def test_mobius_series_against_fft(self):
        # sample f_r on a fine circle of radius 1/2 and recover Taylor coefficients
        n, r = 6, 0.7
        N = 1 << 10
        z = 0.5 * np.exp(2j * np.pi * np.arange(N) / N)
        samples = (z + r) / (1 + r * z)
        coeffs = np.fft.fft(samples) / N / (0.5 ** np.arange(N))
        assert np.allclose(coeffs[:n], mobius_taylor(n, r), atol=1e-10)

    def test_spectral_mapping(self):
        t = np.array([0.3 + 0.1j, 1.0, -2.0, 0.5])
        sp = linalg.spectrum(linalg.analytic_of_nilpotent(t))
        for z in sp.eigenvalues:
            assert abs(z - t[0]) < 1e-8


class TestMatrixJson:
    def test_round_trip(self):
        M = random_complex(3)
        doc = linalg.matrix_to_json(M)
        M2 = linalg.matrix_from_json(json.loads(json.dumps(doc)))
        assert np.allclose(M, M2, atol=0)

    def test_rejects_ragged(self):
        doc = {"n": 2, "entries": [[[1, 0], [0, 0]], [[0, 0]]]}
        with pytest.raises(ValueError, match="entries"):
            linalg.matrix_from_json(doc)

    def test_rejects_nonfinite(self):
        doc = {"n": 1, "entries": [[[math.inf, 0.0]]]}
        with pytest.raises(ValueError, match="finite"):
            linalg.matrix_from_json(doc)

    def test_rejects_missing_n(self):
        with pytest.raises(ValueError, match="'n'"):
            linalg.matrix_from_json({"entries": []})
