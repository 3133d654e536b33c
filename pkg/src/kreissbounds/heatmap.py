"""Heatmap of (theta, log s) -> weighted resolvent norm for one instance.

SVG output is written directly as one <rect> per grid cell (deterministic,
diff-friendly); raster formats (.png, .pdf) are rendered with matplotlib.
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .resolvent import Iterated, Kreiss, Strong, _point_norm

PLOT_N_THETA = 96
PLOT_N_S = 64

# five-stop blue->yellow colormap, linearly interpolated
_STOPS = ((68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37))


def _color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    x = t * (len(_STOPS) - 1)
    i = min(int(x), len(_STOPS) - 2)
    frac = x - i
    rgb = tuple(round(a + frac * (b - a)) for a, b in zip(_STOPS[i], _STOPS[i + 1]))
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def heatmap_data(T, weight, norm: str = "l2",
                 n_theta: int = PLOT_N_THETA, n_s: int = PLOT_N_S):
    """(theta grid, s grid, value matrix [s x theta]) of the weighted norm."""
    T = linalg.as_matrix(T)
    spec = linalg.spectrum(T)
    eigs = spec.as_array()
    if isinstance(weight, Kreiss):
        l, gap = 1, weight.alpha
    elif isinstance(weight, Iterated):
        l, gap = weight.k, weight.alpha + weight.k - 1
    elif isinstance(weight, Strong):
        l, gap = weight.l, None
    else:
        raise TypeError(f"unknown weight {weight!r}")
    thetas = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    ss = np.geomspace(1e-8, 1e2, n_s)
    vals = np.empty((n_s, n_theta))
    for i, s in enumerate(ss):
        for j, th in enumerate(thetas):
            lam = (1.0 + s) * complex(math.cos(th), math.sin(th))
            if gap is None:
                w = float(np.abs(lam - eigs).min()) ** l
            else:
                w = s ** gap
            v = _point_norm(T, lam, l, norm)
            vals[i, j] = w * v if math.isfinite(v) else math.inf
    return thetas, ss, vals


def render_heatmap(path: str, thetas, ss, vals, title: str = "") -> None:
    path = str(path)
    if path.endswith(".svg"):
        _render_svg(path, thetas, ss, vals, title)
    else:
        _render_mpl(path, thetas, ss, vals, title)


def _log_normalize(vals: np.ndarray) -> np.ndarray:
    finite = vals[np.isfinite(vals) & (vals > 0)]
    if finite.size == 0:
        return np.zeros_like(vals)
    lo, hi = np.log10(finite.min()), np.log10(finite.max())
    if hi - lo < 1e-12:
        hi = lo + 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (np.log10(vals) - lo) / (hi - lo)
    t[~np.isfinite(t)] = 1.0
    return np.clip(t, 0.0, 1.0)


def _render_svg(path: str, thetas, ss, vals, title: str) -> None:
    n_s, n_theta = vals.shape
    cell = 6
    margin = 28
    width = margin * 2 + n_theta * cell
    height = margin * 2 + n_s * cell
    t = _log_normalize(vals)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{margin}" y="{margin - 10}" font-family="monospace" font-size="11">{title}</text>',
    ]
    # one <rect> per grid cell; s increases upward (log scale), theta rightward
    for i in range(n_s):
        y = margin + (n_s - 1 - i) * cell
        for j in range(n_theta):
            x = margin + j * cell
            lines.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{_color(t[i, j])}"/>')
    lines.append(
        f'<text x="{margin}" y="{height - 8}" font-family="monospace" font-size="10">'
        f'theta: 0..2pi, s: log {ss[0]:.0e}..{ss[-1]:.0e}</text>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _render_mpl(path: str, thetas, ss, vals, title: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    shown = np.where(np.isfinite(vals), vals, np.nan)
    mesh = ax.pcolormesh(thetas, np.log10(ss), np.log10(shown), shading="nearest")
    fig.colorbar(mesh, ax=ax, label="log10 weighted resolvent norm")
    ax.set_xlabel("theta")
    ax.set_ylabel("log10 s   (|lambda| = 1 + s)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
