"""Dense complex linear algebra: norms, spectra, powers, resolvents, analytic
functions of the nilpotent Toeplitz (shift) matrix.

Matrices are plain square ``numpy`` arrays of ``complex``; ``as_matrix``
validates user input at the API boundary.  Operator norms are the ones
induced by the l1 / l2 / linf vector norms on C^n.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import NonConvergence, SingularResolvent

NORM_KINDS = ("l1", "l2", "linf")

MAX_DIM = 512  # desk scale; eigensolver contract is not extended past this

_SINGULAR_REL_TOL = 1e-14  # LU pivot threshold relative to ||M||


def as_matrix(entries) -> np.ndarray:
    """Validate and return a square complex matrix (n >= 1, finite entries)."""
    M = np.asarray(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError("matrix entries must be finite")
    return M


def _check_norm(norm: str) -> str:
    if norm not in NORM_KINDS:
        raise ValueError(f"unknown norm kind {norm!r}, expected one of {NORM_KINDS}")
    return norm


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset (sorted by (real, imag)) and its spectral radius."""

    eigenvalues: tuple
    spectral_radius: float

    @classmethod
    def from_eigenvalues(cls, eigs) -> "Spectrum":
        eigs = np.asarray(eigs, dtype=complex).ravel()
        order = np.lexsort((eigs.imag, eigs.real))
        eigs = eigs[order]
        radius = float(np.max(np.abs(eigs))) if eigs.size else 0.0
        return cls(eigenvalues=tuple(eigs.tolist()), spectral_radius=radius)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.eigenvalues, dtype=complex)

    def __len__(self):
        return len(self.eigenvalues)


def operator_norm(M: np.ndarray, norm: str = "l2") -> float:
    """Operator norm of M induced by the l1, l2 or linf vector norm."""
    M = np.asarray(M, dtype=complex)
    _check_norm(norm)
    if norm == "l1":
        return float(np.abs(M).sum(axis=0).max())
    if norm == "linf":
        return float(np.abs(M).sum(axis=1).max())
    if M.shape == (1, 1):
        return float(abs(M[0, 0]))
    return float(np.linalg.svd(M, compute_uv=False)[0])


def operator_norms_stacked(B: np.ndarray, norm: str) -> np.ndarray:
    """Operator norms of a stack of matrices, shape (..., n, n) -> (...)."""
    _check_norm(norm)
    ab = np.abs(B)
    if norm == "l1":
        return ab.sum(axis=-2).max(axis=-1)
    if norm == "linf":
        return ab.sum(axis=-1).max(axis=-1)
    return np.linalg.svd(B, compute_uv=False)[..., 0]


def spectrum(M: np.ndarray, max_dim: int = MAX_DIM) -> Spectrum:
    """Eigenvalues of M (Hessenberg reduction + shifted QR, via LAPACK)."""
    M = as_matrix(M)
    if M.shape[0] > max_dim:
        raise ValueError(f"matrix dimension {M.shape[0]} exceeds the supported {max_dim}")
    try:
        eigs = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure is rare
        raise NonConvergence(str(exc)) from exc
    return Spectrum.from_eigenvalues(eigs)


def matrix_power_norms(M: np.ndarray, norm: str = "l2", k_max: int = 32) -> np.ndarray:
    """[||M^0||, ..., ||M^k_max||] by iterated multiplication.

    The running product is periodically rescaled so powers of badly scaled
    matrices neither overflow nor underflow; norms above 1e300 are reported
    as +inf (the overflow flag).
    """
    M = as_matrix(M)
    _check_norm(norm)
    n = M.shape[0]
    out = np.empty(k_max + 1)
    out[0] = 1.0
    P = np.eye(n, dtype=complex)
    log_scale = 0.0
    for k in range(1, k_max + 1):
        P = P @ M
        f = np.abs(P).max()
        if f == 0.0:
            out[k:] = 0.0
            return out
        if f > 1e100 or f < 1e-100:
            P = P / f
            log_scale += math.log(f)
        log_norm = math.log(operator_norm(P, norm)) + log_scale
        out[k] = math.inf if log_norm > math.log(1e300) else math.exp(log_norm)
    return out


def resolvent_power(M: np.ndarray, lam: complex, l: int = 1) -> np.ndarray:
    """(lam*I - M)^(-l) by LU factorization applied l times to the identity."""
    M = as_matrix(M)
    if l < 1:
        raise ValueError("l must be a positive integer")
    n = M.shape[0]
    A = lam * np.eye(n, dtype=complex) - M
    with warnings.catch_warnings():
        # singularity is detected below via the pivot floor
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    pivot_floor = _SINGULAR_REL_TOL * np.linalg.norm(M)
    if np.min(np.abs(np.diag(lu))) <= pivot_floor:
        raise SingularResolvent(f"lambda={lam} is numerically in the spectrum")
    R = np.eye(n, dtype=complex)
    for _ in range(l):
        R = sla.lu_solve((lu, piv), R, check_finite=False)
    return R


def analytic_of_nilpotent(taylor) -> np.ndarray:
    """f(M_n) for the n x n nilpotent shift M_n: upper-triangular Toeplitz
    with taylor[j] on the j-th superdiagonal (only the first n Taylor
    coefficients of f matter)."""
    t = np.asarray(taylor, dtype=complex).ravel()
    n = t.size
    if n < 1:
        raise ValueError("need at least one Taylor coefficient")
    A = np.zeros((n, n), dtype=complex)
    for j in range(n):
        A += t[j] * np.eye(n, k=j)
    return A


# -- matrix file format -------------------------------------------------------
#
# {"n": <int>, "entries": [[[re, im], ...], ...]}   (row-major)


def matrix_to_json(M: np.ndarray) -> dict:
    M = as_matrix(M)
    return {
        "n": int(M.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix document must be a JSON object")
    if "n" not in obj:
        raise ValueError("missing field 'n'")
    try:
        n = int(obj["n"])
    except (TypeError, ValueError):
        raise ValueError("field 'n' must be an integer") from None
    if n < 1:
        raise ValueError("field 'n' must be >= 1")
    rows = obj.get("entries")
    if not isinstance(rows, list) or len(rows) != n:
        raise ValueError(f"field 'entries' must be a list of {n} rows")
    M = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"field 'entries[{i}]' must be a list of {n} entries (ragged rows rejected)")
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise ValueError(f"field 'entries[{i}][{j}]' must be a [re, im] pair")
            re, im = cell
            if not (isinstance(re, (int, float)) and isinstance(im, (int, float))):
                raise ValueError(f"field 'entries[{i}][{j}]' must hold two numbers")
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ValueError(f"field 'entries[{i}][{j}]' is not finite")
            M[i, j] = complex(re, im)
    return M


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def save_matrix(M: np.ndarray, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh, indent=1)
        fh.write("\n")
