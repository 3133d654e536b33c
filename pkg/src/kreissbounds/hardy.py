"""Rational functions analytic in the unit disk and their norms.

A function is kept in partial-fraction form

    f(z) = entire(z) + sum_j  coeff_j / (z - pole_j)^order_j ,

all poles strictly outside the closed disk.  The explicit ``entire``
(polynomial) part is what realizes the r = 0 class (plain polynomials) and
model-space elements whose spectrum contains 0.  Boundary norms H^p come
from uniform quadrature on the circle, the Wiener norm from a certified
(partial sum + closed-form geometric remainder) Taylor expansion.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ConditioningWarning
from .records import BoundRecord

CONFLUENCE_TOL = 1e-8  # poles closer than this are merged into one multiple pole

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PoleTerm:
    pole: complex
    order: int
    coeff: complex


@dataclass(frozen=True)
class TaylorSeries:
    """Leading Taylor coefficients plus a certified bound on the dropped tail."""

    coefficients: np.ndarray
    tail_bound: float


def _trim(coeffs) -> tuple:
    c = list(complex(x) for x in np.atleast_1d(np.asarray(coeffs, dtype=complex)))
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class RationalFunction:
    """Element of the rational classes used throughout: poles outside the
    closed unit disk, optional polynomial part."""

    def __init__(self, terms=(), entire=()):
        terms = tuple(PoleTerm(complex(t.pole), int(t.order), complex(t.coeff))
                      if isinstance(t, PoleTerm) else PoleTerm(complex(t[0]), int(t[1]), complex(t[2]))
                      for t in terms)
        for t in terms:
            if abs(t.pole) <= 1.0:
                raise ValueError(f"pole {t.pole} is not outside the closed unit disk")
            if t.order < 1:
                raise ValueError("pole order must be >= 1")
        self.terms = tuple(t for t in terms if t.coeff != 0)
        self.entire = _trim(entire)

    # -- structure -------------------------------------------------------

    @property
    def poles(self) -> tuple:
        """Poles repeated according to multiplicity (max order per location)."""
        mult: dict[complex, int] = {}
        for t in self.terms:
            mult[t.pole] = max(mult.get(t.pole, 0), t.order)
        out = []
        for p, m in mult.items():
            out.extend([p] * m)
        return tuple(out)

    @property
    def degree(self) -> int:
        d = len(self.poles)
        if self.entire:
            d += len(self.entire) - 1
        return d

    @property
    def pole_margin(self) -> float:
        if not self.terms:
            return math.inf
        return min(abs(t.pole) for t in self.terms)

    def in_class(self, n: int, r: float) -> bool:
        """Membership in the degree-<= n class with poles outside (1/r) D."""
        if self.degree > n:
            return False
        if r == 0:
            return not self.terms
        return self.pole_margin >= 1.0 / r - 1e-12

    # -- evaluation --------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        if self.entire:
            out = out + npoly.polyval(z, np.asarray(self.entire))
        for t in self.terms:
            out = out + t.coeff / (z - t.pole) ** t.order
        return out if out.ndim else complex(out)

    def at_zero(self) -> complex:
        return self(0.0)

    def derivative(self) -> "RationalFunction":
        terms = [PoleTerm(t.pole, t.order + 1, -t.order * t.coeff) for t in self.terms]
        ent = npoly.polyder(np.asarray(self.entire)) if len(self.entire) > 1 else ()
        return RationalFunction(terms, ent)

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((), (complex(c),))

    @classmethod
    def kernel(cls, zeta) -> "RationalFunction":
        """Reproducing kernel k_zeta = 1/(1 - conj(zeta) z), |zeta| < 1."""
        zeta = complex(zeta)
        if abs(zeta) >= 1.0:
            raise ValueError("kernel parameter must lie in the open unit disk")
        if zeta == 0:
            return cls.constant(1.0)
        zb = zeta.conjugate()
        return cls([PoleTerm(1.0 / zb, 1, -1.0 / zb)])

    @classmethod
    def blaschke(cls, lam) -> "RationalFunction":
        """Elementary factor (lam - z)/(1 - conj(lam) z), |lam| < 1."""
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise ValueError("Blaschke parameter must lie in the open unit disk")
        if lam == 0:
            return cls((), (0.0, -1.0))
        lb = lam.conjugate()
        return cls([PoleTerm(1.0 / lb, 1, (1.0 - abs(lam) ** 2) / lb ** 2)], (1.0 / lb,))

    @classmethod
    def from_pq(cls, numerator, poles) -> "RationalFunction":
        """Build from p(z) / prod_j (z - pole_j); numerator coefficients ascending.

        Poles closer than CONFLUENCE_TOL are merged into a multiple pole and
        a ConditioningWarning is issued (derivative-based confluent partial
        fractions take over).
        """
        num = np.atleast_1d(np.asarray(numerator, dtype=complex))
        poles = [complex(p) for p in np.atleast_1d(np.asarray(poles, dtype=complex))] if len(np.atleast_1d(poles)) else []

        clusters: list[list[complex]] = []
        for p in poles:
            for c in clusters:
                if abs(p - c[0]) < CONFLUENCE_TOL:
                    if p != c[0]:
                        warnings.warn(
                            f"poles {p} and {c[0]} are closer than {CONFLUENCE_TOL}; merging",
                            ConditioningWarning, stacklevel=2)
                    c.append(p)
                    break
            else:
                clusters.append([p])
        reps = [(c[0], len(c)) for c in clusters]

        den = np.array([1.0 + 0.0j])
        for xi, m in reps:
            for _ in range(m):
                den = npoly.polymul(den, np.array([-xi, 1.0]))

        entire: tuple = ()
        if num.size - 1 >= len(poles) and len(poles) > 0:
            quo, rem = npoly.polydiv(num, den)
            entire = _trim(quo)
            num = np.atleast_1d(rem)
        elif len(poles) == 0:
            return cls((), _trim(num))

        terms = []
        for xi, m in reps:
            num_loc = _local_taylor(num, xi, m)
            other = np.array([1.0 + 0.0j])
            for xi2, m2 in reps:
                if xi2 == xi:
                    continue
                for _ in range(m2):
                    other = npoly.polymul(other, np.array([-xi2, 1.0]))
            den_loc = _local_taylor(other, xi, m)
            h = _series_mul(num_loc, _series_inv(den_loc, m), m)
            for i in range(m):
                if h[i] != 0:
                    terms.append(PoleTerm(xi, m - i, h[i]))
        return cls(terms, entire)

    # -- p/q view and serialization ----------------------------------------

    def as_pq(self) -> tuple[np.ndarray, tuple]:
        """(numerator coefficients ascending, poles with multiplicity)."""
        poles = self.poles
        den = np.array([1.0 + 0.0j])
        for p in poles:
            den = npoly.polymul(den, np.array([-p, 1.0]))
        num = np.array([0.0 + 0.0j])
        mult: dict[complex, int] = {}
        for t in self.terms:
            mult[t.pole] = max(mult.get(t.pole, 0), t.order)
        for t in self.terms:
            fac = np.array([1.0 + 0.0j])
            for p, m in mult.items():
                reduced = m - t.order if p == t.pole else m
                for _ in range(reduced):
                    fac = npoly.polymul(fac, np.array([-p, 1.0]))
            num = npoly.polyadd(num, t.coeff * fac)
        if self.entire:
            num = npoly.polyadd(num, npoly.polymul(np.asarray(self.entire), den))
        return np.atleast_1d(num), poles

    def to_json(self) -> dict:
        num, poles = self.as_pq()
        doc = {
            "poles": [[p.real, p.imag] for p in poles],
            "numerator": [[c.real, c.imag] for c in np.atleast_1d(num)],
        }
        return doc

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        if not isinstance(obj, dict) or "poles" not in obj or "numerator" not in obj:
            raise ValueError("rational function document needs 'poles' and 'numerator'")
        poles = [complex(re, im) for re, im in obj["poles"]]
        num = [complex(re, im) for re, im in obj["numerator"]]
        if "entire" in obj and obj["entire"]:
            ent = [complex(re, im) for re, im in obj["entire"]]
            base = cls.from_pq(num, poles)
            return cls(base.terms, _trim(npoly.polyadd(np.asarray(base.entire) if base.entire else np.array([0j]), np.asarray(ent))))
        return cls.from_pq(num, poles) if poles else cls((), num)

    def __repr__(self):
        return f"RationalFunction(terms={len(self.terms)}, poles={len(self.poles)}, entire_deg={len(self.entire) - 1 if self.entire else None})"


def _local_taylor(coeffs: np.ndarray, xi: complex, order: int) -> np.ndarray:
    """First `order` Taylor coefficients of the polynomial at z = xi."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    out = np.zeros(order, dtype=complex)
    for i in range(order):
        acc = 0.0 + 0.0j
        for k in range(i, c.size):
            acc += c[k] * math.comb(k, i) * xi ** (k - i)
        out[i] = acc
    return out


def _series_inv(d: np.ndarray, order: int) -> np.ndarray:
    if d[0] == 0:
        raise ZeroDivisionError("series has no inverse (vanishing constant term)")
    inv = np.zeros(order, dtype=complex)
    inv[0] = 1.0 / d[0]
    for i in range(1, order):
        acc = 0.0 + 0.0j
        for j in range(1, min(i, d.size - 1) + 1):
            acc += d[j] * inv[i - j]
        inv[i] = -acc / d[0]
    return inv


def _series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order, dtype=complex)
    for i in range(order):
        acc = 0.0 + 0.0j
        for j in range(i + 1):
            if j < a.size and i - j < b.size:
                acc += a[j] * b[i - j]
        out[i] = acc
    return out


# -- boundary sampling and H^p norms ------------------------------------------


def _next_pow2(x: int) -> int:
    n = 1
    while n < x:
        n <<= 1
    return n


def quadrature_nodes(f: RationalFunction) -> int:
    """Node count scaling with degree and closeness of poles to the circle."""
    rho = f.pole_margin
    base = 64 * max(f.degree, 1)
    if math.isfinite(rho):
        base *= math.ceil(1.0 / (rho - 1.0))
    return min(max(1024, _next_pow2(base)), 1 << 20)


def boundary_samples(f: RationalFunction, N: int) -> np.ndarray:
    """f at the N-th roots of unity (N a power of two, N >= 4*degree)."""
    if N < 4 or N & (N - 1):
        raise ValueError("N must be a power of two >= 4")
    if N < 4 * f.degree:
        raise ValueError(f"N={N} is below 4*degree={4 * f.degree}")
    z = np.exp(2j * np.pi * np.arange(N) / N)
    return np.asarray(f(z))


def _golden_max(g, a: float, b: float, tol: float = 1e-12, max_iter: int = 128) -> float:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    g1, g2 = g(x1), g(x2)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if g1 < g2:
            a, x1, g1 = x1, x2, g2
            x2 = a + _GOLDEN * (b - a)
            g2 = g(x2)
        else:
            b, x2, g2 = x2, x1, g1
            x1 = b - _GOLDEN * (b - a)
            g1 = g(x1)
    return max(g1, g2)


def hardy_norm(f: RationalFunction, p: float) -> float:
    """H^p boundary norm: p-mean of |f| on the circle (p < inf), or the sup
    of |f| on the circle, sampled and then refined by golden-section around
    the sample argmax (p = inf)."""
    if p != math.inf and p < 1:
        raise ValueError("only p in [1, inf] is supported")
    N = quadrature_nodes(f)
    vals = np.abs(boundary_samples(f, N))
    if p == math.inf:
        i = int(np.argmax(vals))
        step = 2.0 * math.pi / N
        theta0 = i * step

        def g(theta):
            return abs(f(cmath.exp(1j * theta)))

        return max(float(vals[i]), _golden_max(g, theta0 - step, theta0 + step))
    return float(np.mean(vals ** p) ** (1.0 / p))


# -- Taylor coefficients and the Wiener norm -----------------------------------


def _term_tail_log(t: PoleTerm, K: int) -> float:
    """log of a certified bound on sum_{k>K} |taylor_k(term)|."""
    rho = abs(t.pole)
    la = math.log(abs(t.coeff))
    m = t.order
    if m == 1:
        return la - (K + 2) * math.log(rho) - math.log(1.0 - 1.0 / rho)
    q = ((K + 1 + m) / (K + 2)) / rho
    if q >= 1.0:
        return math.inf
    log_binom = math.lgamma(K + m + 1) - math.lgamma(m) - math.lgamma(K + 2)
    return la + log_binom - (K + 1 + m) * math.log(rho) - math.log(1.0 - q)


def _certified_tail(f: RationalFunction, K: int) -> float:
    total = 0.0
    for t in f.terms:
        lt = _term_tail_log(t, K)
        total += math.inf if lt == math.inf else math.exp(lt)
    return total


def taylor_coefficients(f: RationalFunction, eps: float) -> TaylorSeries:
    """Taylor coefficients at 0, truncated once the certified geometric
    remainder (per partial-fraction term) drops below eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    K_floor = max(8, len(f.entire))
    K = max(32, K_floor)
    while _certified_tail(f, K) > eps:
        K *= 2
        if K > (1 << 22):
            raise ValueError("tail certification failed; poles too close to the circle")
    # shrink to the first K whose certified tail clears eps
    lo, hi = K_floor, K
    while lo < hi:
        mid = (lo + hi) // 2
        if _certified_tail(f, mid) <= eps:
            hi = mid
        else:
            lo = mid + 1
    K = lo
    c = np.zeros(K + 1, dtype=complex)
    if f.entire:
        c[: len(f.entire)] += np.asarray(f.entire)
    ks = np.arange(K + 1)
    for t in f.terms:
        r = 1.0 / t.pole
        rpow = np.cumprod(np.full(K + 1, r, dtype=complex))  # r^1 .. r^(K+1)
        if t.order == 1:
            c += -t.coeff * rpow
        else:
            m = t.order
            binom = np.cumprod(np.concatenate(([1.0], (ks[1:] + m - 1) / ks[1:])))
            c += t.coeff * (-r) ** m * binom * np.concatenate(([1.0], rpow[:-1]))
    return TaylorSeries(coefficients=c, tail_bound=_certified_tail(f, K))


def wiener_norm(f: RationalFunction) -> float:
    """Certified upper bound on sum_k |f_hat(k)| (partial sum + tail)."""
    ts = taylor_coefficients(f, 1e-12)
    return float(np.sum(np.abs(ts.coefficients)) + ts.tail_bound)


def hardy_inequality_check(f: RationalFunction) -> BoundRecord:
    """||f||_W <= pi ||f'||_{H^1} + |f(0)| on one function."""
    lhs = wiener_norm(f)
    rhs = math.pi * hardy_norm(f.derivative(), 1.0) + abs(f.at_zero())
    return BoundRecord("hardy_w", lhs=lhs, rhs=rhs, tol=1e-8,
                       params={"n": f.degree, "norm": ""})


def load_rational(path) -> RationalFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return RationalFunction.from_json(json.load(fh))


def save_rational(f: RationalFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(f.to_json(), fh, indent=1)
        fh.write("\n")
