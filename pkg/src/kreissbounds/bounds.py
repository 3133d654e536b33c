"""Closed-form constants and the inequality verification harness.

Each inequality of the suite is identified by a string key; ``verify``
computes both sides on one instance and returns a BoundRecord.  Probe-type
inequalities whose constants are not pinned down anywhere (thm4_probe,
thm7_probe) get rhs = +inf: the record asserts finiteness and carries the
fitted constant in params["fitted"].
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg, resolvent
from .errors import HypothesisViolation
from .gallery import lambda_nu_of_r, mobius_of_nilpotent
from .hardy import RationalFunction, hardy_inequality_check, hardy_norm
from .linalg import Spectrum, operator_norm
from .records import BoundRecord
from .resolvent import Iterated, Kreiss, Strong, power_bound, sup_weighted_resolvent

INEQUALITY_IDS = (
    "rho_le_P",          # Kreiss constant below the power bound
    "kreiss_matrix_2en",  # P <= 2 e n rho (historical constant)
    "spijker_en",        # P <= e n rho (sharp constant, Hilbert norm)
    "bernstein_thmA",    # ||f'||_1 <= (1+r)^(1/p) n (1-r)^(-1/p) ||f||_p
    "thm3_upper",        # rho_alpha <= (pi+1) (2(1+r))^(1-alpha) n (1-r)^(alpha-1) P
    "thm3_sharpness",    # sharpness probe against cot(pi/4n)
    "thm3_kmt",          # P <= e n rho_alpha (Hilbert norm)
    "thm4_probe",        # rho_alpha^k: fitted constant, finiteness only
    "ds_bound",          # ||R(z)|| <= (3n/dist)^(3/2) P pointwise (Hilbert norm)
    "z3_bound",          # rho_strong <= (5 pi/3 + 2 sqrt 2) n^(3/2) P (any norm)
    "thm7_probe",        # rho_strong_l: fitted constant, finiteness only
    "hardy_w",           # ||f||_W <= pi ||f'||_1 + |f(0)|
)

SHARPNESS_PASS_FRACTION = 0.8  # probe must reach this fraction of cot(pi/4n)

# fixed sample points (s, theta) for the pointwise ds_bound check
_DS_S = (0.0, 1e-3, 1e-2, 0.1, 0.3, 1.0, 2.0, 9.0)
_DS_THETA = tuple(2.0 * math.pi * k / 5.0 + 0.37 for k in range(5))


def thmA_constant(n: int, r: float, p: float) -> float:
    """(1+r)^(1/p) n / (1-r)^(1/p); p = inf gives n."""
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    if p == math.inf:
        return float(n)
    if p < 1:
        raise ValueError("p must lie in [1, inf]")
    return (1.0 + r) ** (1.0 / p) * n / (1.0 - r) ** (1.0 / p)


def thm3_constant(n: int, r: float, alpha: float) -> float:
    """(pi+1) (2(1+r))^(1-alpha) n / (1-r)^(1-alpha)."""
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    return (math.pi + 1.0) * (2.0 * (1.0 + r)) ** (1.0 - alpha) * n / (1.0 - r) ** (1.0 - alpha)


def ds_constant(n: int, dist: float) -> float:
    """(3n/dist)^(3/2)."""
    return (3.0 * n / dist) ** 1.5


def z3_constant(n: int) -> float:
    """(5 pi/3 + 2 sqrt 2) n^(3/2)."""
    return (5.0 * math.pi / 3.0 + 2.0 * math.sqrt(2.0)) * n ** 1.5


def cot_target(n: int) -> float:
    return 1.0 / math.tan(math.pi / (4.0 * n))


def _tol(rhs: float) -> float:
    if not math.isfinite(rhs):
        return 0.0
    return 1e-6 * max(1.0, abs(rhs))


def _require_l2(norm: str, inequality_id: str):
    if norm != "l2":
        raise HypothesisViolation(f"{inequality_id} is proved for the Hilbert norm only")


def _finite_power(T, norm, spec) -> float:
    P = power_bound(T, norm, spec).value
    if not math.isfinite(P):
        raise HypothesisViolation("instance is not power bounded")
    return P


def thm3_sharpness_probe(n: int, alpha: float, r: float) -> BoundRecord:
    """Evaluates (1-r)^((1-alpha)/2) (lambda^2-1)^alpha ||R(lambda, A_r)||
    at the distinguished point lambda(r); the quantity approaches
    cot(pi/(4n)) as r -> 1 and the record passes once it clears the frozen
    fraction of that target."""
    lam, _nu = lambda_nu_of_r(r, alpha)
    A = mobius_of_nilpotent(n, r)
    R = linalg.resolvent_power(A, lam, 1)
    probe = (1.0 - r) ** ((1.0 - alpha) / 2.0) * ((lam - 1.0) * (lam + 1.0)) ** alpha \
        * operator_norm(R, "l2")
    target = cot_target(n)
    rec = BoundRecord("thm3_sharpness", lhs=SHARPNESS_PASS_FRACTION * target, rhs=probe,
                      params={"n": n, "alpha": alpha, "r": r, "cot": target,
                              "probe": probe, "norm": "l2"},
                      tol=0.0)
    return rec


def verify(inequality_id: str, *, matrix=None, norm: str = "l2",
           rational: RationalFunction | None = None, params: dict | None = None,
           spec: Spectrum | None = None) -> BoundRecord:
    """Evaluate both sides of one inequality on one instance.

    Raises HypothesisViolation when the instance does not satisfy the
    inequality's hypothesis (wrong norm, spectral radius at 1, power
    unboundedness, ...).
    """
    if inequality_id not in INEQUALITY_IDS:
        raise ValueError(f"unknown inequality id {inequality_id!r}")
    params = dict(params or {})

    if inequality_id == "hardy_w":
        if rational is None:
            raise ValueError("hardy_w needs a rational function instance")
        return hardy_inequality_check(rational)

    if inequality_id == "bernstein_thmA":
        if rational is None:
            raise ValueError("bernstein_thmA needs a rational function instance")
        p = params.get("p", math.inf)
        n = int(params.get("n", rational.degree))
        margin = rational.pole_margin
        r = float(params.get("r", 0.0 if math.isinf(margin) else 1.0 / margin))
        if not rational.in_class(n, r):
            raise HypothesisViolation(f"function is not in the (n={n}, r={r}) class")
        lhs = hardy_norm(rational.derivative(), 1.0)
        rhs = thmA_constant(n, r, p) * hardy_norm(rational, p)
        return BoundRecord("bernstein_thmA", lhs=lhs, rhs=rhs, tol=_tol(rhs),
                           params={"n": n, "r": r, "p": p, "norm": ""})

    if inequality_id == "thm3_sharpness":
        return thm3_sharpness_probe(int(params["n"]), float(params["alpha"]), float(params["r"]))

    if matrix is None:
        raise ValueError(f"{inequality_id} needs a matrix instance")
    T = linalg.as_matrix(matrix)
    n = T.shape[0]
    spec = spec or linalg.spectrum(T)
    r_T = spec.spectral_radius
    base = {"n": n, "r": r_T, "norm": norm}

    if inequality_id == "rho_le_P":
        P = _finite_power(T, norm, spec)
        rho = sup_weighted_resolvent(T, norm, Kreiss(1.0), spec).value
        return BoundRecord("rho_le_P", lhs=rho, rhs=P, tol=_tol(P), params=base)

    if inequality_id in ("kreiss_matrix_2en", "spijker_en"):
        _require_l2(norm, inequality_id)
        P = _finite_power(T, norm, spec)
        rho = sup_weighted_resolvent(T, norm, Kreiss(1.0), spec).value
        factor = 2.0 * math.e if inequality_id == "kreiss_matrix_2en" else math.e
        rhs = factor * n * rho
        return BoundRecord(inequality_id, lhs=P, rhs=rhs, tol=_tol(rhs), params=base)

    if inequality_id == "thm3_kmt":
        _require_l2(norm, inequality_id)
        alpha = float(params["alpha"])
        P = _finite_power(T, norm, spec)
        rho_a = sup_weighted_resolvent(T, norm, Kreiss(alpha), spec).value
        rhs = math.e * n * rho_a
        return BoundRecord("thm3_kmt", lhs=P, rhs=rhs, tol=_tol(rhs),
                           params=base | {"alpha": alpha})

    if inequality_id == "thm3_upper":
        alpha = float(params["alpha"])
        if r_T >= 1.0 - 1e-9:
            raise HypothesisViolation("fractional Kreiss condition requires r(T) < 1")
        P = _finite_power(T, norm, spec)
        lhs = sup_weighted_resolvent(T, norm, Kreiss(alpha), spec).value
        rhs = thm3_constant(n, r_T, alpha) * P
        return BoundRecord("thm3_upper", lhs=lhs, rhs=rhs, tol=_tol(rhs),
                           params=base | {"alpha": alpha})

    if inequality_id == "thm4_probe":
        alpha = float(params["alpha"])
        k = int(params.get("l", params.get("k", 1)))
        if r_T >= 1.0 - 1e-9:
            raise HypothesisViolation("iterated fractional condition requires r(T) < 1")
        P = _finite_power(T, norm, spec)
        lhs = sup_weighted_resolvent(T, norm, Iterated(k, alpha), spec).value
        scale = n ** k * (1.0 - r_T) ** (alpha - 1.0) * P
        return BoundRecord("thm4_probe", lhs=lhs, rhs=math.inf,
                           params=base | {"alpha": alpha, "l": k, "fitted": lhs / scale})

    if inequality_id == "ds_bound":
        _require_l2(norm, inequality_id)
        P = _finite_power(T, norm, spec)
        eigs = spec.as_array()
        worst = 0.0
        for s in _DS_S:
            for th in _DS_THETA:
                lam = (1.0 + s) * complex(math.cos(th), math.sin(th))
                dist = float(np.abs(lam - eigs).min())
                if dist <= 1e-10:
                    continue
                val = resolvent._point_norm(T, lam, 1, norm)
                worst = max(worst, val / ds_constant(n, dist))
        return BoundRecord("ds_bound", lhs=worst, rhs=P, tol=_tol(P), params=base)

    if inequality_id == "z3_bound":
        P = _finite_power(T, norm, spec)
        lhs = sup_weighted_resolvent(T, norm, Strong(1), spec).value
        rhs = z3_constant(n) * P
        return BoundRecord("z3_bound", lhs=lhs, rhs=rhs, tol=_tol(rhs), params=base)

    if inequality_id == "thm7_probe":
        l = int(params.get("l", 1))
        P = _finite_power(T, norm, spec)
        lhs = sup_weighted_resolvent(T, norm, Strong(l), spec).value
        scale = n ** (l + 0.5) * P
        return BoundRecord("thm7_probe", lhs=lhs, rhs=math.inf,
                           params=base | {"l": l, "fitted": lhs / scale})

    raise AssertionError(inequality_id)
