"""Sup-type resolvent quantities: the power bound, the classical / fractional
Kreiss and iterated (Hille-Yosida) constants, the strong (distance-to-
spectrum) constants, and the Wiener-route upper bound on iterated resolvents.

The supremum over |lambda| > 1 (or >= 1 for strong weights) is taken on a
fixed product grid lambda = (1+s) e^{i theta}, theta on 512 uniform angles
and s on a 200-point logarithmic grid in [1e-8, 1e2] (plus s = 0, the unit
circle, used only by strong weights), followed by coordinate-descent
refinement around the top grid cells.  The objective tends to 1 at infinity
whenever the weight exponent matches the resolvent power, so the reported
value is max(refined grid value, that limit).
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import linalg
from .blaschke import SpectrumInDisk, project_kernel_power
from .errors import SpectrumOnCircle
from .hardy import wiener_norm
from .linalg import Spectrum, operator_norm
from .records import BoundRecord

N_THETA = 512
S_GRID = np.concatenate([[0.0], np.geomspace(1e-8, 1e2, 200)])
THETA_GRID = np.linspace(0.0, 2.0 * math.pi, N_THETA, endpoint=False)

EXCLUSION_RADIUS = 1e-10     # around eigenvalues, for strong weights
DIVERGENCE_RADIUS = 1.0 - 1e-9  # r(T) at which fractional weights diverge

_REFINE_STEP_TOL = 1e-8
_REFINE_MAX_ITER = 300
_CONVERGED_REL = 1e-6
_TOP_CELLS = 5
_CHUNK = 8192


@dataclass(frozen=True)
class Kreiss:
    """Weight (|lambda| - 1)^alpha on ||R(lambda)||, |lambda| > 1."""

    alpha: float = 1.0


@dataclass(frozen=True)
class Iterated:
    """Weight (|lambda| - 1)^(alpha + k - 1) on ||R^k(lambda)||."""

    k: int = 1
    alpha: float = 1.0


@dataclass(frozen=True)
class Strong:
    """Weight dist(lambda, sigma(T))^l on ||R^l(lambda)||, |lambda| >= 1."""

    l: int = 1


@dataclass
class SupResult:
    value: float
    argmax: complex | None
    grid_stats: tuple
    converged: bool
    at_infinity: bool = False


@dataclass
class PowerBound:
    value: float
    k_attained: int
    certified: bool


def _weight_params(weight):
    """(resolvent power l, circle-gap exponent or None-for-strong, uses_dist)."""
    if isinstance(weight, Kreiss):
        if not 0.0 < weight.alpha <= 1.0:
            raise ValueError("Kreiss exponent must lie in (0, 1]")
        return 1, weight.alpha, False
    if isinstance(weight, Iterated):
        if weight.k < 1:
            raise ValueError("iterated order must be >= 1")
        if not 0.0 < weight.alpha <= 1.0:
            raise ValueError("iterated fractional exponent must lie in (0, 1]")
        return weight.k, weight.alpha + weight.k - 1.0, False
    if isinstance(weight, Strong):
        if weight.l < 1:
            raise ValueError("strong order must be >= 1")
        return weight.l, None, True
    raise TypeError(f"unknown weight {weight!r}")


# -- power bound ---------------------------------------------------------------


_POWER_CACHE: OrderedDict = OrderedDict()


def power_bound(T: np.ndarray, norm: str = "l2", spec: Spectrum | None = None) -> PowerBound:
    """P(T) = sup_k ||T^k||, with a certified geometric-decay stopping rule.

    Stops when (a) r(T) < 1 - 1e-6 and ten consecutive power norms fall below
    1e-10 of the running max (certified), (b) the iteration cap
    20 n ceil(1/(1-r)) (at most 1e6) is hit (not certified), or (c) some norm
    exceeds 1e12 (reported unbounded).
    """
    T = linalg.as_matrix(T)
    key = (T.tobytes(), T.shape[0], norm)
    if key in _POWER_CACHE:
        _POWER_CACHE.move_to_end(key)
        return _POWER_CACHE[key]
    n = T.shape[0]
    r = (spec or linalg.spectrum(T)).spectral_radius
    norm_T = operator_norm(T, norm)
    if norm_T <= 1.0 + 1e-12:
        # contraction: every power norm is <= 1 and k = 0 attains it
        result = PowerBound(1.0, 0, True)
    else:
        if r < 1.0:
            cap = min(20 * n * math.ceil(1.0 / (1.0 - r)), 1_000_000)
        else:
            cap = 1_000_000
        best, k_at = 1.0, 0
        consecutive = 0
        P = np.eye(n, dtype=complex)
        log_scale = 0.0
        sqrt_n = math.sqrt(n)
        result = None
        for k in range(1, cap + 1):
            P = P @ T
            f = np.abs(P).max()
            if f == 0.0:
                result = PowerBound(best, k_at, True)
                break
            if f > 1e100 or f < 1e-100:
                P = P / f
                log_scale += math.log(f)
            # Frobenius brackets the l2/l1/linf norms within sqrt(n); the exact
            # norm is only needed when the bracket can move the running max.
            log_fro = math.log(np.linalg.norm(P)) + log_scale
            upper = math.exp(min(log_fro, 700.0)) * (sqrt_n if norm != "l2" else 1.0)
            if upper > best:
                log_norm = math.log(operator_norm(P, norm)) + log_scale
                val = math.inf if log_norm > math.log(1e300) else math.exp(log_norm)
                if val > best:
                    best, k_at = val, k
                if val > 1e12:
                    result = PowerBound(math.inf, k, False)
                    break
            if r < 1.0 - 1e-6 and upper < 1e-10 * best:
                consecutive += 1
                if consecutive >= 10:
                    result = PowerBound(best, k_at, True)
                    break
            else:
                consecutive = 0
        if result is None:
            result = PowerBound(best, k_at, False)
    _POWER_CACHE[key] = result
    if len(_POWER_CACHE) > 256:
        _POWER_CACHE.popitem(last=False)
    return result


# -- gridded resolvent norms ----------------------------------------------------


_LAM_FLAT = ((1.0 + S_GRID)[:, None] * np.exp(1j * THETA_GRID)[None, :]).ravel()
_S_FLAT = np.repeat(S_GRID, N_THETA)

_PROFILE_CACHE: OrderedDict = OrderedDict()


class _GridProfile:
    """Norms of R^l(lambda) over the fixed grid, one construction pass.

    l1/linf values are exact (cheap absolute-sum reductions).  For the l2
    norm only two-sided bounds are precomputed (max row 2-norm <= sigma_max
    <= sqrt(l1 * linf)); the exact SVD runs lazily, and only where the
    weighted upper bound can still beat the best weighted lower bound, with
    a Gram-squaring refinement pass in between so flat plateaus are never
    fully decomposed.  Exact values accumulate across the weights that share
    the profile (fractional sweeps reuse them).
    """

    def __init__(self, T: np.ndarray, l: int, eig_data):
        self.T = T
        self.l = l
        self.eig_data = eig_data
        K = _LAM_FLAT.size
        self.norm_arrays = {"l1": np.empty(K), "linf": np.empty(K)}
        self.upper = np.empty(K)
        self.lower = np.empty(K)
        self.exact = np.full(K, np.nan)
        for a in range(0, K, _CHUNK):
            sl = slice(a, min(a + _CHUNK, K))
            R = _resolvent_batch(T, _LAM_FLAT[sl], l, eig_data)
            with np.errstate(invalid="ignore", over="ignore"):
                ab = np.abs(R)
                l1 = ab.sum(axis=1).max(axis=1)
                li = ab.sum(axis=2).max(axis=1)
                lo = np.sqrt((ab * ab).sum(axis=2).max(axis=1))
            self.norm_arrays["l1"][sl] = l1
            self.norm_arrays["linf"][sl] = li
            with np.errstate(invalid="ignore"):
                self.upper[sl] = np.sqrt(l1 * li)
            self.lower[sl] = lo
        for arr in (self.norm_arrays["l1"], self.norm_arrays["linf"],
                    self.upper, self.lower):
            arr[~np.isfinite(arr)] = np.inf
        self.exact[~np.isfinite(self.upper)] = np.inf

    def _refine_bounds(self, idx: np.ndarray) -> None:
        """Tighten [lower, upper] at idx by one Gram squaring:
        sigma_max(R)^2 = sigma_max(R^H R), bounded by the Hermitian l1 norm
        above and the largest column 2-norm below."""
        for a in range(0, idx.size, _CHUNK):
            sel = idx[a:a + _CHUNK]
            R = _resolvent_batch(self.T, _LAM_FLAT[sel], self.l, self.eig_data)
            with np.errstate(invalid="ignore", over="ignore"):
                B = np.conjugate(np.swapaxes(R, 1, 2)) @ R
                abB = np.abs(B)
                up2 = np.sqrt(abB.sum(axis=1).max(axis=1))
                lo2 = np.power((abB * abB).sum(axis=1).max(axis=1), 0.25)
            good = np.isfinite(up2)
            self.upper[sel[good]] = np.minimum(self.upper[sel[good]], up2[good])
            self.lower[sel[good]] = np.maximum(self.lower[sel[good]], lo2[good])

    def _solve_exact(self, idx: np.ndarray) -> None:
        for a in range(0, idx.size, _CHUNK):
            sel = idx[a:a + _CHUNK]
            R = _resolvent_batch(self.T, _LAM_FLAT[sel], self.l, self.eig_data)
            with np.errstate(invalid="ignore", over="ignore"):
                vals = np.linalg.svd(R, compute_uv=False)[:, 0]
            vals[~np.isfinite(vals)] = np.inf
            self.exact[sel] = vals

    def values(self, norm: str, w: np.ndarray) -> np.ndarray:
        """Pointwise weighted-max-ready values: exact wherever the weighted
        objective could attain the grid maximum, a valid underestimate
        elsewhere (harmless for ranking)."""
        if norm != "l2":
            return self.norm_arrays[norm]

        def best_known() -> float:
            with np.errstate(invalid="ignore"):
                known = np.where(np.isnan(self.exact), self.lower, self.exact)
                vals = w * known
                vals = vals[np.isfinite(vals)]
            return float(vals.max()) if vals.size else 0.0

        with np.errstate(invalid="ignore"):
            stage1 = np.isnan(self.exact) & (w > 0) & \
                (w * self.upper >= best_known() * (1.0 - 1e-9))
        if np.any(stage1):
            self._refine_bounds(np.flatnonzero(stage1))
            with np.errstate(invalid="ignore"):
                stage2 = np.isnan(self.exact) & (w > 0) & \
                    (w * self.upper >= best_known() * (1.0 - 1e-9))
            if np.any(stage2):
                self._solve_exact(np.flatnonzero(stage2))
        return np.where(np.isnan(self.exact), self.lower, self.exact)


def _resolvent_batch(T: np.ndarray, lams: np.ndarray, l: int,
                     eig_data) -> np.ndarray:
    """(len(lams), n, n) stack of R^l(lam, T); rows with singular shifts
    come back as inf entries rather than raising."""
    n = T.shape[0]
    eye = np.eye(n, dtype=complex)
    if eig_data is not None:
        V, Vinv, mu = eig_data
        with np.errstate(divide="ignore", invalid="ignore"):
            w = 1.0 / (lams[:, None] - mu[None, :])
        R = (V[None, :, :] * (w ** l)[:, None, :]) @ Vinv
    else:
        A = lams[:, None, None] * eye - T
        try:
            R1 = np.linalg.inv(A)
        except np.linalg.LinAlgError:
            R1 = np.empty_like(A)
            for i in range(A.shape[0]):
                try:
                    R1[i] = np.linalg.inv(A[i])
                except np.linalg.LinAlgError:
                    R1[i] = np.inf
        R = R1
        with np.errstate(invalid="ignore", over="ignore"):
            for _ in range(l - 1):
                R = R @ R1
    return R


def _eig_route(T: np.ndarray):
    """Eigendecomposition shortcut when T is safely diagonalizable.

    Validated against direct solves at three probe points; any mismatch
    falls back to the LU route (defective gallery matrices always do).
    """
    n = T.shape[0]
    try:
        mu, V = np.linalg.eig(T)
        Vinv = np.linalg.inv(V)
    except np.linalg.LinAlgError:
        return None
    if not (np.all(np.isfinite(V)) and np.all(np.isfinite(Vinv))):
        return None
    if np.linalg.cond(V) > 1e8:
        return None
    data = (V, Vinv, mu)
    probes = np.array([1.7 + 0.3j, -1.31 + 0.77j, 0.4 - 1.9j])
    fast = _resolvent_batch(T, probes, 1, data)
    for i, lam in enumerate(probes):
        try:
            direct = np.linalg.solve(lam * np.eye(n) - T, np.eye(n))
        except np.linalg.LinAlgError:
            return None
        scale = np.abs(direct).max()
        if not np.all(np.isfinite(fast[i])) or np.abs(fast[i] - direct).max() > 1e-9 * scale:
            return None
    return data


def _grid_profile(T: np.ndarray, l: int) -> _GridProfile:
    """All-norms grid profile of R^l, cached per (matrix, l)."""
    key = (T.tobytes(), T.shape[0], l)
    if key in _PROFILE_CACHE:
        _PROFILE_CACHE.move_to_end(key)
        return _PROFILE_CACHE[key]
    out = _GridProfile(T, l, _eig_route(T))
    _PROFILE_CACHE[key] = out
    if len(_PROFILE_CACHE) > 6:
        _PROFILE_CACHE.popitem(last=False)
    return out


def _point_norm(T: np.ndarray, lam: complex, l: int, norm: str) -> float:
    n = T.shape[0]
    A = lam * np.eye(n, dtype=complex) - T
    try:
        R = np.linalg.solve(A, np.eye(n, dtype=complex))
    except np.linalg.LinAlgError:
        return math.inf
    if l > 1:
        R = np.linalg.matrix_power(R, l)
    return operator_norm(R, norm)


# -- the sup optimizer -----------------------------------------------------------


def sup_weighted_resolvent(T: np.ndarray, norm: str = "l2", weight=Kreiss(1.0),
                           spec: Spectrum | None = None) -> SupResult:
    """Global maximum of weight(lambda) ||R^l(lambda, T)|| over its domain."""
    T = linalg.as_matrix(T)
    l, gap_exp, uses_dist = _weight_params(weight)
    spec = spec or linalg.spectrum(T)
    eigs = spec.as_array()

    if gap_exp is not None and gap_exp < l and spec.spectral_radius >= DIVERGENCE_RADIUS:
        # fractional weight with spectrum touching the circle: the quantity
        # is infinite exactly when r(T) >= 1
        return SupResult(value=math.inf, argmax=None,
                         grid_stats=(0, 0), converged=True)

    profile = _grid_profile(T, l)

    if uses_dist:
        dist = np.abs(_LAM_FLAT[:, None] - eigs[None, :]).min(axis=1)
        w = dist ** l
        excluded = dist <= EXCLUSION_RADIUS
    else:
        with np.errstate(divide="ignore"):
            w = _S_FLAT ** gap_exp
        excluded = _S_FLAT == 0.0
    w = np.where(excluded, 0.0, w)
    rnorms = profile.values(norm, w)
    with np.errstate(invalid="ignore"):
        obj = w * rnorms
    obj[excluded | ~np.isfinite(obj)] = -math.inf

    def objective(s: float, theta: float) -> float:
        if s < 0.0 or (not uses_dist and s == 0.0):
            return -math.inf
        lam = (1.0 + s) * complex(math.cos(theta), math.sin(theta))
        if uses_dist:
            d = np.abs(lam - eigs).min()
            if d <= EXCLUSION_RADIUS:
                return -math.inf
            wt = d ** l
        else:
            wt = s ** gap_exp
        val = _point_norm(T, lam, l, norm)
        return wt * val if math.isfinite(val) else -math.inf

    order = np.argsort(-obj, kind="stable")[:_TOP_CELLS]
    best_val = -math.inf
    best_point = None
    total_evals = _LAM_FLAT.size
    total_iters = 0
    converged = True
    for idx in order:
        if obj[idx] == -math.inf:
            continue
        s0 = float(_S_FLAT[idx])
        th0 = float(THETA_GRID[idx % N_THETA])
        val, point, evals, iters, conv = _refine(objective, s0, th0, float(obj[idx]))
        total_evals += evals
        total_iters += iters
        if val > best_val:
            best_val, best_point = val, point
            converged = conv

    limit = 1.0 if (uses_dist or gap_exp == l) else 0.0
    at_infinity = bool(limit > best_val)
    value = float(max(best_val, limit))
    argmax = None if best_point is None else (1.0 + best_point[0]) * complex(
        math.cos(best_point[1]), math.sin(best_point[1]))
    return SupResult(value=value, argmax=argmax,
                     grid_stats=(int(total_evals), int(total_iters)),
                     converged=bool(converged), at_infinity=at_infinity)


def _refine(objective, s0: float, th0: float, f0: float):
    """Coordinate pattern search in (s, theta): multiplicative steps in s,
    additive in theta, shrinking to relative step 1e-8."""
    s_ratio = (S_GRID[2] / S_GRID[1]) - 1.0   # log-grid spacing
    th_step = THETA_GRID[1]
    s, th, best = s0, th0, f0
    evals = 0
    iters = 0
    last_change = 0.0
    improved_any = False
    while iters < _REFINE_MAX_ITER and (s_ratio > _REFINE_STEP_TOL or th_step > _REFINE_STEP_TOL):
        iters += 1
        candidates = []
        if s > 0.0:
            candidates += [(s * (1.0 + s_ratio), th), (s / (1.0 + s_ratio), th)]
        else:
            candidates += [(S_GRID[1], th)]
        candidates += [(s, th + th_step), (s, th - th_step)]
        moved = False
        for s2, th2 in candidates:
            v = objective(s2, th2)
            evals += 1
            if v > best:
                last_change = (v - best) / max(abs(v), 1e-300)
                s, th, best = s2, th2, v
                moved = True
                improved_any = True
                break
        if not moved:
            s_ratio *= 0.5
            th_step *= 0.5
    if s_ratio <= _REFINE_STEP_TOL and th_step <= _REFINE_STEP_TOL:
        converged = True  # step-tolerance exit: the final iteration moved nothing
    else:
        converged = (not improved_any) or (last_change < _CONVERGED_REL)
    return best, (s, th), evals, iters, converged


# -- Wiener-route bound and the scaling reduction --------------------------------


def lemma2_bound(T: np.ndarray, lam: complex, l: int = 1, norm: str = "l2",
                 spec: Spectrum | None = None, power: float | None = None) -> float:
    """P(T) |lam|^(-l) || P_B (k_{1/conj(lam)})^l ||_W, an upper bound for
    ||R^l(lam, T)|| valid for any power bounded T with spectrum inside the disk."""
    T = linalg.as_matrix(T)
    lam = complex(lam)
    if abs(lam) <= 1.0:
        raise ValueError("lam must lie outside the closed unit disk")
    spec = spec or linalg.spectrum(T)
    if spec.spectral_radius >= 1.0 - 1e-10:
        raise SpectrumOnCircle("spectrum must lie strictly inside the unit disk")
    if power is None:
        power = power_bound(T, norm, spec).value
    sigma = SpectrumInDisk(spec.eigenvalues)
    g = project_kernel_power(sigma, lam, l)
    return power * abs(lam) ** (-l) * wiener_norm(g)


def scaling_reduction_check(T: np.ndarray, lam: complex, l: int = 1,
                            norm: str = "l2", spec: Spectrum | None = None) -> BoundRecord:
    """Numerical check of the maximum-principle reduction lam = rho lam*,
    T* = T/rho:  rho^l dist(lam*, sigma(T*))^l = dist(lam, sigma(T))^l  and
    rho^(-l) R^l(lam*, T*) = R^l(lam, T)."""
    T = linalg.as_matrix(T)
    lam = complex(lam)
    if abs(lam) <= 1.0:
        raise ValueError("lam must satisfy |lam| > 1")
    spec = spec or linalg.spectrum(T)
    eigs = spec.as_array()
    rho = abs(lam)
    lam_star = lam / rho
    T_star = T / rho

    dist_full = np.abs(lam - eigs).min() ** l
    dist_red = rho ** l * np.abs(lam_star - eigs / rho).min() ** l
    disc_dist = abs(dist_full - dist_red) / max(abs(dist_full), 1e-300)

    R_full = linalg.resolvent_power(T, lam, l)
    R_red = rho ** (-l) * linalg.resolvent_power(T_star, lam_star, l)
    disc_res = operator_norm(R_full - R_red, norm) / max(operator_norm(R_full, norm), 1e-300)

    disc = max(disc_dist, disc_res)
    rec = BoundRecord("scaling_reduction", lhs=disc, rhs=1e-8,
                      params={"n": T.shape[0], "l": l, "norm": norm,
                              "lambda": (lam.real, lam.imag)},
                      tol=0.0)
    return rec
