"""Lower-bound search for the Bernstein constants: maximize the
derivative-to-function norm ratio over the rational class by multi-start
Nelder-Mead on pole positions (log-modulus, angle) and numerator
coefficients, projecting poles back outside (1/r) D when the search steps
inside."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bounds import thmA_constant
from .hardy import RationalFunction, hardy_norm


@dataclass
class SearchResult:
    best_ratio: float
    witness: RationalFunction
    evaluations: int
    upper_bound: float


def _decode(x: np.ndarray, n: int, r: float) -> RationalFunction:
    if r == 0.0:
        coeffs = x[:n] + 1j * x[n:2 * n]
        return RationalFunction((), coeffs)
    logmod = x[:n]
    ang = x[n:2 * n]
    re = x[2 * n:3 * n]
    im = x[3 * n:4 * n]
    mod = np.exp(logmod)
    mod = np.clip(mod, 1.0 / r, 1e6)  # projection back into the class
    poles = mod * np.exp(1j * ang)
    return RationalFunction.from_pq(re + 1j * im, poles)


def _encode_start(n: int, r: float, rng: np.random.Generator) -> np.ndarray:
    if r == 0.0:
        return rng.standard_normal(2 * n)
    mod = rng.uniform(1.0 / r, 2.0 / r, size=n)
    ang = rng.uniform(0.0, 2.0 * math.pi, size=n)
    coeff = rng.standard_normal(2 * n)
    return np.concatenate([np.log(mod), ang, coeff])


def bernstein_lower_search(n: int, r: float, p: float, budget: int = 2000,
                           seed: int = 0, mode: str = "h1") -> SearchResult:
    """Best found ratio ||f'||_{H^1} / ||f||_{H^p} over the (n, r) class
    (mode "h1"), or ||f'||_{H^2} / ||f||_{H^2} (mode "h2", reported against
    the conjectured n (1+r)/(1-r) trend, with no proven finite-n bound)."""
    if budget < 100:
        raise ValueError("budget must be at least 100")
    if mode not in ("h1", "h2"):
        raise ValueError("mode must be 'h1' or 'h2'")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    num_p, den_p = (1.0, p) if mode == "h1" else (2.0, 2.0)
    evaluations = 0

    def ratio(f: RationalFunction) -> float:
        denom = hardy_norm(f, den_p)
        if denom < 1e-12:
            return 0.0
        return hardy_norm(f.derivative(), num_p) / denom

    def objective(x: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        try:
            return -ratio(_decode(x, n, r))
        except (ValueError, ZeroDivisionError):
            return 0.0

    rng = np.random.default_rng(seed)
    restarts = 4
    per_start = max(budget // restarts, 50)
    best_val = -math.inf
    best_x = None
    for _ in range(restarts):
        x0 = _encode_start(n, r, rng)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxfev": per_start, "xatol": 1e-8, "fatol": 1e-10})
        if -res.fun > best_val:
            best_val = -res.fun
            best_x = res.x
    witness = _decode(best_x, n, r)
    upper = thmA_constant(n, r, p) if mode == "h1" else math.inf
    return SearchResult(best_ratio=float(best_val), witness=witness,
                        evaluations=evaluations, upper_bound=float(upper))


def conjectured_h2_slope(r: float) -> float:
    """The conjectured limit of C(H^2,H^2)/n as n grows."""
    return (1.0 + r) / (1.0 - r)
