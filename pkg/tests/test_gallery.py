"""Tests for the instance gallery and its determinism."""

import math

import numpy as np
import pytest

from kreissbounds import gallery, linalg
from kreissbounds.gallery import (InstanceSpec, bidiagonal, cot_matrix, jordan_nilpotent,
                                  lambda_nu_of_r, mobius_of_nilpotent, mobius_taylor,
                                  random_contraction, random_rational, random_spectrum)


class TestDeterministicMatrices:
    def test_jordan_forms(self):
        assert np.array_equal(jordan_nilpotent(1), np.zeros((1, 1)))
        assert np.array_equal(jordan_nilpotent(2), np.array([[0, 1], [0, 0]]))

    def test_jordan_nilpotency(self):
        n = 5
        assert np.abs(np.linalg.matrix_power(jordan_nilpotent(n), n)).max() == 0.0

    def test_mobius_reduces_to_shift(self):
        assert np.allclose(mobius_of_nilpotent(4, 0.0), jordan_nilpotent(4), atol=0)

    def test_mobius_taylor_values(self):
        r = 0.6
        t = mobius_taylor(5, r)
        expected = [r, 1 - r * r, -r * (1 - r * r), r * r * (1 - r * r), -r ** 3 * (1 - r * r)]
        assert np.allclose(t, expected, atol=1e-15)

    def test_mobius_contraction(self):
        for r in (0.2, 0.9):
            assert linalg.operator_norm(mobius_of_nilpotent(8, r), "l2") <= 1 + 1e-9

    def test_cot_forms(self):
        assert np.array_equal(cot_matrix(1), np.ones((1, 1)))
        assert np.array_equal(cot_matrix(2), np.array([[1, 2], [0, 1]]))

    def test_cot_norm_2x2(self):
        assert linalg.operator_norm(cot_matrix(2), "l2") == pytest.approx(1 + math.sqrt(2))

    def test_bidiagonal_forms(self):
        assert np.array_equal(bidiagonal([0.5]), np.array([[0.5]]))
        assert np.array_equal(bidiagonal([0, 0]), np.array([[0, 0], [2, 0]]))

    def test_bidiagonal_spectrum(self):
        pts = [0.1, -0.3j, 0.5]
        sp = linalg.spectrum(bidiagonal(pts))
        assert np.allclose(sorted(sp.eigenvalues, key=lambda z: (z.real, z.imag)),
                           sorted(pts, key=lambda z: (complex(z).real, complex(z).imag)),
                           atol=1e-10)

    def test_bidiagonal_rejects_outside(self):
        with pytest.raises(ValueError):
            bidiagonal([1.0])


class TestLambdaNu:
    def test_consistency_identity(self):
        lam, nu = lambda_nu_of_r(0.9, 0.5)
        assert abs(nu - (lam * 0.9 - 1) / (lam - 0.9)) < 1e-12

    def test_r_to_one_limit(self):
        lams = [lambda_nu_of_r(1 - 10.0 ** (-e), 0.5)[0] for e in (2, 4, 6)]
        assert all(l > 1 for l in lams)
        assert lams[0] > lams[1] > lams[2]
        assert lams[2] - 1 < 1e-8

    def test_nu_value(self):
        _, nu = lambda_nu_of_r(0.99, 0.5)
        assert abs(nu - (-0.9)) < 1e-12


class TestRandomGenerators:
    @pytest.mark.parametrize("norm", ("l1", "l2", "linf"))
    def test_contraction_norm(self, norm):
        T = random_contraction(6, 42, norm)
        assert linalg.operator_norm(T, norm) <= 0.999 + 1e-12
        assert linalg.spectrum(T).spectral_radius < 1.0

    def test_contraction_unit_radius(self):
        T = random_contraction(6, 42, "l2", unit_radius=True)
        assert abs(linalg.operator_norm(T, "l2") - 1.0) < 1e-12

    def test_reproducible(self):
        assert np.array_equal(random_contraction(5, 7), random_contraction(5, 7))
        assert not np.array_equal(random_contraction(5, 7), random_contraction(5, 8))

    def test_random_spectrum_known(self):
        T = random_spectrum(6, 0.9, 11)
        sp = gallery.known_spectrum("random_spectrum", 6, {"r": 0.9, "seed": 11})
        assert np.allclose(np.sort_complex(np.diag(T)), np.sort_complex(sp.as_array()))
        assert np.abs(np.tril(T, -1)).max() == 0.0
        assert sp.spectral_radius < 0.9

    def test_random_rational_class(self):
        f = random_rational(5, 0.5, 3)
        assert f.degree <= 5
        assert f.pole_margin >= 2.0 - 1e-12
        assert max(abs(p) for p in f.poles) <= 4.0 + 1e-12
        assert f.in_class(5, 0.5)
        assert math.isfinite(gallery.RationalFunction.kernel(0.0)(0.0).real)

    def test_random_rational_polynomial_class(self):
        f = random_rational(4, 0.0, 5)
        assert not f.poles
        assert f.degree == 3
        assert f.in_class(4, 0.0)

    def test_random_rational_deterministic(self):
        f, g = random_rational(3, 0.5, 9), random_rational(3, 0.5, 9)
        z = 0.3 + 0.2j
        assert f(z) == g(z)


class TestKnownSpectraAgainstSolver:
    @pytest.mark.parametrize("kind,n,params", [
        ("jordan_nilpotent", 5, {}),
        ("mobius_of_nilpotent", 5, {"r": 0.7}),
        ("cot_matrix", 5, {}),
        ("bidiagonal", 4, {"spectrum": [0.1, 0.2j, -0.3, 0.4]}),
        ("random_spectrum", 5, {"r": 0.9, "seed": 21}),
    ])
    def test_cross_validation(self, kind, n, params):
        spec = InstanceSpec(kind, n, params=params, seed=params.get("seed", 0))
        M = spec.build()
        known = spec.spectrum().as_array()
        solved = linalg.spectrum(M).as_array()
        assert np.abs(np.sort_complex(known) - np.sort_complex(solved)).max() < 1e-8


class TestInstanceSpec:
    def test_json_round_trip(self):
        spec = InstanceSpec("mobius_of_nilpotent", 4, params={"r": 0.5}, seed=3)
        again = InstanceSpec.from_json(spec.to_json())
        assert np.array_equal(spec.build(), again.build())

    def test_bidiagonal_json_pairs(self):
        # the JSON form carries the spectrum as [re, im] pairs
        spec = InstanceSpec("bidiagonal", 2, params={"spectrum": [[0.1, 0.2], [0.0, -0.3]]})
        M = spec.build()
        assert np.allclose(np.diag(M), [0.1 + 0.2j, -0.3j], atol=0)
        assert spec.spectrum().spectral_radius == pytest.approx(0.3)
        again = InstanceSpec.from_json(spec.to_json())
        assert np.array_equal(M, again.build())

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            InstanceSpec("not_a_kind", 2)
