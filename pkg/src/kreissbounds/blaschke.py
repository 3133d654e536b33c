"""Finite Blaschke products, the Malmquist orthonormal basis of the model
space, its derivatives in closed form, and the projection of reproducing
kernel powers onto the model space.

The basis attached to an ordered spectrum (lam_1, ..., lam_n) in the disk is

    e_k = (prod_{j<k} b_{lam_j}) * (1 - |lam_k|^2)^(1/2) / (1 - conj(lam_k) z),

orthonormal in H^2.  Derivatives follow the logarithmic-derivative recursion

    e_k^(j+1) = sum_s C(j,s) S^(s) e_k^(j-s),
    S(z) = sum_{i<=k} conj(lam_i)/(1-conj(lam_i) z) - sum_{i<k} 1/(lam_i - z),

whose s-th derivative is available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import PoleHit
from .hardy import RationalFunction

MAX_DERIVATIVE_ORDER = 8  # Leibniz expansion grows factorially past this

_POLE_TOL = 1e-15


@dataclass(frozen=True)
class SpectrumInDisk:
    """Ordered finite subset of the open unit disk (repeats = multiplicities).

    The order matters: the Malmquist basis depends on it.
    """

    points: tuple

    def __init__(self, points):
        pts = tuple(complex(p) for p in points)
        if not pts:
            raise ValueError("spectrum must contain at least one point")
        for p in pts:
            if abs(p) >= 1.0:
                raise ValueError(f"spectrum point {p} is not strictly inside the unit disk")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def dist(self, z: complex) -> float:
        return min(abs(z - p) for p in self.points)


def blaschke_factor(lam: complex, z):
    """b_lam(z) = (lam - z)/(1 - conj(lam) z)."""
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise ValueError("Blaschke parameter must lie in the open unit disk")
    z = np.asarray(z, dtype=complex)
    den = 1.0 - lam.conjugate() * z
    if np.any(np.abs(den) < _POLE_TOL):
        raise PoleHit(f"evaluation at a pole of b_{lam}")
    out = (lam - z) / den
    return out if out.ndim else complex(out)


def blaschke_product(sigma: SpectrumInDisk, z):
    """B_sigma(z) = prod_i b_{lam_i}(z)."""
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for lam in sigma.points:
        out = out * blaschke_factor(lam, z)
    return out if out.ndim else complex(out)


class MalmquistBasis:
    """Orthonormal basis (e_k), k = 1..n, of the model space of B_sigma."""

    def __init__(self, sigma: SpectrumInDisk):
        if not isinstance(sigma, SpectrumInDisk):
            sigma = SpectrumInDisk(sigma)
        self.sigma = sigma
        self.norm_factors = np.array(
            [math.sqrt(1.0 - abs(p) ** 2) for p in sigma.points])

    @property
    def n(self) -> int:
        return self.sigma.n

    def _check_k(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise ValueError(f"basis index {k} outside 1..{self.n}")
        return k

    def eval(self, k: int, z):
        k = self._check_k(k)
        pts = self.sigma.points
        z = np.asarray(z, dtype=complex)
        den = 1.0 - pts[k - 1].conjugate() * z
        if np.any(np.abs(den) < _POLE_TOL):
            raise PoleHit(f"evaluation at a pole of e_{k}")
        out = self.norm_factors[k - 1] / den
        for j in range(k - 1):
            out = out * blaschke_factor(pts[j], z)
        return out if out.ndim else complex(out)

    def derivative_sequence(self, k: int, j_max: int, z: complex) -> np.ndarray:
        """[e_k(z), e_k'(z), ..., e_k^(j_max)(z)] by the closed-form recursion."""
        k = self._check_k(k)
        if j_max < 0 or j_max > MAX_DERIVATIVE_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE_ORDER}")
        z = complex(z)
        pts = self.sigma.points[:k]
        lam_bar = np.conjugate(pts)
        kernel_den = 1.0 - lam_bar * z
        if np.any(np.abs(kernel_den) < _POLE_TOL):
            raise PoleHit(f"evaluation at a pole of e_{k}")
        zero_den = np.array([p - z for p in pts[: k - 1]])
        if j_max >= 1 and zero_den.size and np.any(np.abs(zero_den) < 1e-12):
            raise PoleHit("derivative recursion degenerates at a basis zero")

        d = np.empty(j_max + 1, dtype=complex)
        d[0] = self.eval(k, z)
        if j_max == 0:
            return d
        # S^(s)(z) = s! * (sum_i lam_bar_i^(s+1)/(1-lam_bar_i z)^(s+1)
        #                  - sum_{i<k} 1/(lam_i - z)^(s+1))
        S = np.empty(j_max, dtype=complex)
        for s in range(j_max):
            term = np.sum(lam_bar ** (s + 1) / kernel_den ** (s + 1))
            if zero_den.size:
                term -= np.sum(1.0 / zero_den ** (s + 1))
            S[s] = math.factorial(s) * term
        for j in range(j_max):
            acc = 0.0 + 0.0j
            for s in range(j + 1):
                acc += math.comb(j, s) * S[s] * d[j - s]
            d[j + 1] = acc
        return d


def malmquist_eval(basis: MalmquistBasis, k: int, z):
    return basis.eval(k, z)


def malmquist_derivative(basis: MalmquistBasis, k: int, j: int, z: complex) -> complex:
    if j == 0:
        return basis.eval(k, complex(z))
    return complex(basis.derivative_sequence(k, j, z)[j])


def lemma9_ratio(basis: MalmquistBasis, k: int, j: int, lam_star: complex) -> float:
    """Empirical constant |e_k^(j)| * dist^(j+1) / ((1-|lam_k|^2)^(1/2) k^j)
    at a point of the unit circle; reported, never asserted."""
    lam_star = complex(lam_star)
    if abs(abs(lam_star) - 1.0) > 1e-12:
        raise ValueError("lam_star must lie on the unit circle")
    val = abs(malmquist_derivative(basis, k, j, lam_star))
    dist = basis.sigma.dist(lam_star)
    return val * dist ** (j + 1) / (basis.norm_factors[k - 1] * k ** j)


def lemma9_constants(c0: float, j_max: int) -> list[float]:
    """C_{j+1} = 2 (j+1) max_s [ C(j,s) s! C_{j-s} ] from the seed C_0."""
    C = [float(c0)]
    for j in range(j_max):
        C.append(2.0 * (j + 1) * max(math.comb(j, s) * math.factorial(s) * C[j - s]
                                     for s in range(j + 1)))
    return C


def _numerator_polynomials(sigma: SpectrumInDisk) -> tuple[list, np.ndarray]:
    """N_k over the common denominator prod_j (1 - conj(lam_j) z)."""
    pts = sigma.points
    n = len(pts)
    factors_zero = [np.array([p, -1.0]) for p in pts]             # (lam_j - z)
    factors_pole = [np.array([1.0, -p.conjugate()]) for p in pts]  # (1 - conj(lam_j) z)
    nums = []
    for k in range(1, n + 1):
        N = np.array([math.sqrt(1.0 - abs(pts[k - 1]) ** 2) + 0.0j])
        for j in range(k - 1):
            N = npoly.polymul(N, factors_zero[j])
        for j in range(k, n):
            N = npoly.polymul(N, factors_pole[j])
        nums.append(N)
    return nums, np.asarray(pts)


def expansion_to_rational(sigma: SpectrumInDisk, coeffs) -> RationalFunction:
    """sum_k coeffs[k-1] * e_k as an explicit rational function."""
    nums, pts = _numerator_polynomials(sigma)
    coeffs = np.asarray(coeffs, dtype=complex)
    num = np.array([0.0 + 0.0j])
    for c, N in zip(coeffs, nums):
        num = npoly.polyadd(num, c * N)
    nonzero = [p for p in pts if p != 0]
    if not nonzero:
        return RationalFunction((), num)
    # prod_j (1 - conj(lam_j) z) = C * prod_{lam_j != 0} (z - 1/conj(lam_j))
    C = np.prod([-p.conjugate() for p in nonzero])
    poles = [1.0 / p.conjugate() for p in nonzero]
    return RationalFunction.from_pq(num / C, poles)


def projection_coefficients(sigma: SpectrumInDisk, f, nodes: int = 4096) -> np.ndarray:
    """Quadrature oracle for ((f, e_k))_k; f is any callable on the circle."""
    basis = MalmquistBasis(sigma)
    z = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    fv = np.asarray(f(z), dtype=complex)
    return np.array([np.mean(fv * np.conjugate(basis.eval(k, z)))
                     for k in range(1, sigma.n + 1)])


def kernel_power_coefficients(sigma: SpectrumInDisk, lam: complex, l: int) -> np.ndarray:
    """Malmquist coefficients of P_B (k_{1/conj(lam)})^l, computed exactly.

    c_k = conj((z^t e_k)^(t)(zeta)) / t!  with t = l-1, zeta = 1/conj(lam),
    via the Leibniz expansion (z^t e_k)^(t) = sum_j C(t,j) (t!/j!) z^j e_k^(j).
    """
    lam = complex(lam)
    if abs(lam) <= 1.0:
        raise ValueError("lam must lie outside the closed unit disk")
    if l < 1:
        raise ValueError("l must be a positive integer")
    t = l - 1
    if t > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"l must be <= {MAX_DERIVATIVE_ORDER + 1}")
    zeta = 1.0 / lam.conjugate()
    basis = MalmquistBasis(sigma)
    out = np.empty(sigma.n, dtype=complex)
    for k in range(1, sigma.n + 1):
        d = basis.derivative_sequence(k, t, zeta)
        acc = 0.0 + 0.0j
        for j in range(t + 1):
            acc += math.comb(t, j) * zeta ** j * d[j] / math.factorial(j)
        out[k - 1] = acc.conjugate()
    return out


def project_kernel_power(sigma: SpectrumInDisk, lam: complex, l: int) -> RationalFunction:
    """P_B((k_{1/conj(lam)})^l) as an explicit rational function."""
    if not isinstance(sigma, SpectrumInDisk):
        sigma = SpectrumInDisk(sigma)
    coeffs = kernel_power_coefficients(sigma, lam, l)
    return expansion_to_rational(sigma, coeffs)
