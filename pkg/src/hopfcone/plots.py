"""Figure rendering for reports and sweeps.

Functions return matplotlib figures; save_figure writes them to disk.
The Agg backend is forced up front so rendering never needs a display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .hopf import BasePoint, fibre_over
from .su2 import TWO_PI

# samples closer to the projection pole than this are masked out
POLE_GUARD = 1e-6


def projected_loop(base: BasePoint, samples: int = 400) -> np.ndarray:
    """Stereographic image of the fibre over base, shape (samples+1, 3),
    with NaN rows where the curve passes the projection pole so plotted
    polylines break instead of shooting off to infinity."""
    circle = fibre_over(base)
    ts = np.linspace(0.0, TWO_PI, samples + 1)
    out = np.empty((ts.size, 3))
    for i, t in enumerate(ts):
        p = circle.point(float(t))
        denom = 1.0 + p.w
        if denom < POLE_GUARD:
            out[i] = np.nan
        else:
            out[i] = (p.x / denom, p.y / denom, p.z / denom)
    return out


def fibre_link_figure(bases, samples: int = 400, title: str | None = None):
    """Stereographic picture of the fibres over the given base points."""
    fig = plt.figure(figsize=(6.0, 6.0))
    ax = fig.add_subplot(projection="3d")
    for idx, base in enumerate(bases):
        loop = projected_loop(base, samples)
        ax.plot(loop[:, 0], loop[:, 1], loop[:, 2], lw=1.4, label=f"fibre {idx + 1}")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize="small")
    return fig


def sweep_figure(rows, title: str | None = None):
    """Axis-distance curves along a deformation sweep; the dotted
    vertical line marks the symmetric parameter."""
    taus = [r.tau for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(taus, [r.b1 for r in rows], "o-", lw=1.2, ms=3, label="b1")
    ax.plot(taus, [r.b2 for r in rows], "s-", lw=1.2, ms=3, label="b2")
    ax.plot(taus, [r.phi for r in rows], "^-", lw=1.2, ms=3, label="phi")
    ax.plot(taus, [r.delta_h for r in rows], "--", lw=1.0, label="central length")
    symmetric = min(rows, key=lambda r: abs(r.b1 - r.b2))
    ax.axvline(symmetric.tau, color="0.6", lw=0.8, ls=":")
    ax.set_xlabel("tau")
    ax.set_ylabel("distance")
    if title:
        ax.set_title(title)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def save_figure(fig, path: str) -> None:
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
