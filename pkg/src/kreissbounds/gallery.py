"""Constructors for the concrete matrices and scalar functions the inequality
suite runs on, plus seeded random instance generators.

Every generator is a pure function of its arguments: the same spec always
produces the same instance.  Deterministic constructions also expose their
known spectra so downstream quantities need not trust the eigensolver.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .hardy import RationalFunction
from .linalg import Spectrum, analytic_of_nilpotent, operator_norm

KINDS = ("jordan_nilpotent", "mobius_of_nilpotent", "cot_matrix", "bidiagonal",
         "random_contraction", "random_spectrum", "random_rational")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _as_points(spec_points) -> np.ndarray:
    """Spectrum parameter as complex points; accepts [[re, im], ...] pairs
    (the JSON form) as well as complex sequences."""
    arr = np.asarray(spec_points)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        return arr[:, 0] + 1j * arr[:, 1]
    return arr.astype(complex).ravel()


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def jordan_nilpotent(n: int) -> np.ndarray:
    """The n x n nilpotent shift: ones on the first superdiagonal."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return np.eye(n, k=1, dtype=complex)


def mobius_taylor(n: int, r: float) -> np.ndarray:
    """First n Taylor coefficients of (z + r)/(1 + r z)."""
    t = np.empty(n, dtype=complex)
    t[0] = r
    for k in range(1, n):
        t[k] = (1.0 - r * r) * (-r) ** (k - 1)
    return t


def mobius_of_nilpotent(n: int, r: float) -> np.ndarray:
    """A_r = ((z + r)/(1 + r z))(M_n): a contraction with spectrum {r}."""
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    return analytic_of_nilpotent(mobius_taylor(n, r))


def cot_matrix(n: int) -> np.ndarray:
    """((1 + z)/(1 - z))(M_n): ones on the diagonal, twos strictly above.
    Its l2 norm is cot(pi/(4n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    A = np.eye(n, dtype=complex)
    for j in range(1, n):
        A += 2.0 * np.eye(n, k=j)
    return A


def bidiagonal(spectrum_points) -> np.ndarray:
    """Lower bidiagonal with the given diagonal and constant subdiagonal 2."""
    pts = _as_points(spectrum_points)
    if pts.size < 1:
        raise ValueError("need at least one diagonal entry")
    if np.any(np.abs(pts) >= 1.0):
        raise ValueError("diagonal entries must lie strictly inside the unit disk")
    A = np.diag(pts)
    n = pts.size
    A += 2.0 * np.eye(n, k=-1)
    return A


def lambda_nu_of_r(r: float, alpha: float) -> tuple[float, float]:
    """The sharpness-probe evaluation point lambda(r) > 1 and its Mobius
    parameter nu(r) = (1-r)^alpha - 1; they satisfy nu = (lambda r - 1)/(lambda - r)."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    g = (1.0 - r) ** alpha
    lam = (1.0 + r - r * g) / (1.0 + r - g)
    nu = g - 1.0
    return lam, nu


def random_contraction(n: int, seed, norm: str = "l2", unit_radius: bool = False) -> np.ndarray:
    """Complex Gaussian matrix scaled to operator norm 0.999 (or exactly 1
    with unit_radius=True), so P(T) = 1 holds by construction."""
    if n > 64:
        raise ValueError("random contractions are generated up to n = 64")
    G = _complex_gaussian(_rng(seed), (n, n))
    target = 1.0 if unit_radius else 0.999
    return G * (target / operator_norm(G, norm))


def _random_spectrum_diag(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    mod = radius * np.sqrt(rng.uniform(size=n))
    ang = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return (mod * np.exp(1j * ang)).astype(complex)


def random_spectrum(n: int, radius: float, seed) -> np.ndarray:
    """Upper-triangular matrix with eigenvalues drawn uniformly from the disk
    of the given radius and Gaussian strictly-upper entries (non-normal)."""
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    rng = _rng(seed)
    A = np.diag(_random_spectrum_diag(n, radius, rng))
    iu = np.triu_indices(n, k=1)
    A[iu] = 0.5 * _complex_gaussian(rng, len(iu[0]))
    return A


def random_rational(n: int, r: float, seed) -> RationalFunction:
    """Random element of the degree-<= n class with poles outside (1/r) D:
    pole moduli uniform in [1/r, 2/r], angles uniform, Gaussian numerator.
    r = 0 yields a random polynomial of degree n - 1 (the degenerate class)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    rng = _rng(seed)
    if r == 0.0:
        return RationalFunction((), _complex_gaussian(rng, n))
    mod = rng.uniform(1.0 / r, 2.0 / r, size=n)
    ang = rng.uniform(0.0, 2.0 * math.pi, size=n)
    poles = mod * np.exp(1j * ang)
    num = _complex_gaussian(rng, n)
    return RationalFunction.from_pq(num, poles)


def known_spectrum(kind: str, n: int, params: dict) -> Spectrum | None:
    """Exact spectrum for deterministic constructions (bypasses the QR solver)."""
    if kind == "jordan_nilpotent":
        return Spectrum.from_eigenvalues(np.zeros(n, dtype=complex))
    if kind == "mobius_of_nilpotent":
        return Spectrum.from_eigenvalues(np.full(n, params["r"], dtype=complex))
    if kind == "cot_matrix":
        return Spectrum.from_eigenvalues(np.ones(n, dtype=complex))
    if kind == "bidiagonal":
        return Spectrum.from_eigenvalues(_as_points(params["spectrum"]))
    if kind == "random_spectrum":
        # triangular construction: the diagonal is the spectrum
        rng = _rng(params["seed"])
        return Spectrum.from_eigenvalues(_random_spectrum_diag(n, params["r"], rng))
    return None


@dataclass(frozen=True)
class InstanceSpec:
    """Serializable description of one matrix/function instance."""

    kind: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown instance kind {self.kind!r}")

    def build(self):
        """The instance itself: a matrix, or a RationalFunction for the
        random_rational kind."""
        p = self.params
        if self.kind == "jordan_nilpotent":
            return jordan_nilpotent(self.n)
        if self.kind == "mobius_of_nilpotent":
            return mobius_of_nilpotent(self.n, p["r"])
        if self.kind == "cot_matrix":
            return cot_matrix(self.n)
        if self.kind == "bidiagonal":
            return bidiagonal(p["spectrum"])
        if self.kind == "random_contraction":
            return random_contraction(self.n, self.seed, p.get("norm", "l2"),
                                      p.get("unit_radius", False))
        if self.kind == "random_spectrum":
            return random_spectrum(self.n, p["r"], self.seed)
        if self.kind == "random_rational":
            return random_rational(self.n, p["r"], self.seed)
        raise AssertionError(self.kind)

    def spectrum(self) -> Spectrum | None:
        params = dict(self.params)
        if self.kind == "random_spectrum":
            params["seed"] = self.seed
        return known_spectrum(self.kind, self.n, params)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "params": self.params, "seed": self.seed}

    @classmethod
    def from_json(cls, obj) -> "InstanceSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(kind=obj["kind"], n=int(obj["n"]),
                   params=dict(obj.get("params", {})), seed=int(obj.get("seed", 0)))
