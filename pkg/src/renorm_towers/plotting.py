"""Static figures: cycle arc diagrams and graphs of the maps.

SVG output is made byte-reproducible by fixing the hash salt used for
element ids and dropping the creation date from the metadata.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from renorm_towers.kneading import TruncatedTent  # noqa: E402
from renorm_towers.plinear import ExactCycle, PLinearMap  # noqa: E402

_RC = {
    "svg.hashsalt": "renorm-towers",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.spines.left": False,
}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "svg"
    metadata = {"Date": None} if fmt == "svg" else None
    fig.savefig(path, format=fmt, metadata=metadata, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_cycle(points: Sequence, successor: Sequence[int], path: Path,
               title: Optional[str] = None, width: float = 8.0) -> Path:
    """Points on a horizontal line, each joined to its image by an arc above it."""
    xs = [float(Fraction(x)) for x in points]
    n = len(xs)
    if sorted(successor) != list(range(1, n + 1)):
        raise ValueError("successor must be a permutation of 1..N")
    span = (max(xs) - min(xs)) or 1.0
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(width, width * 0.35))
        ax.axhline(0, color="0.3", lw=0.8)
        ax.plot(xs, [0] * n, "o", color="black", ms=4, zorder=3)
        t = np.linspace(0.0, np.pi, 60)
        for i, j in enumerate(successor):
            a, b = xs[i], xs[j - 1]
            mid, rad = (a + b) / 2, abs(b - a) / 2
            sign = 1 if b > a else -1
            arc_x = mid - sign * rad * np.cos(t)
            arc_y = rad * np.sin(t)
            ax.plot(arc_x, arc_y, color="tab:blue", lw=0.9)
            ax.annotate("", xy=(arc_x[-1], arc_y[-1]), xytext=(arc_x[-4], arc_y[-4]),
                        arrowprops={"arrowstyle": "-|>", "color": "tab:blue", "lw": 0.9})
        if n <= 30:
            for k, x in enumerate(xs, start=1):
                ax.annotate(str(k), (x, 0), xytext=(0, -12), textcoords="offset points",
                            ha="center", va="top")
        ax.set_xlim(min(xs) - 0.05 * span, max(xs) + 0.05 * span)
        ax.set_ylim(-0.12 * span, 0.55 * span)
        ax.set_yticks([])
        ax.set_xticks([])
        ax.set_aspect("equal")
        if title:
            ax.set_title(title)
        return _save(fig, path)


def draw_permutation(image: Sequence[int], path: Path, title: Optional[str] = None) -> Path:
    return draw_cycle(list(range(1, len(image) + 1)), image, path, title=title)


def plot_map_with_cycles(f, cycles: Sequence[ExactCycle], path: Path,
                         domain: Optional[tuple] = None, title: Optional[str] = None) -> Path:
    """Graph of a P-linear or truncated tent map with cycle points marked on the diagonal."""
    with plt.rc_context(_RC | {"axes.spines.left": True}):
        fig, ax = plt.subplots(figsize=(5, 5))
        if isinstance(f, PLinearMap):
            xs = [float(b) for b in f.breakpoints]
            ys = [float(v) for v in f.values]
            lo, hi = xs[0], xs[-1]
        else:
            lo, hi = domain or (0.0, 1.0)
            a = f.a if isinstance(f, TruncatedTent) else Fraction(1)
            knots = sorted({Fraction(0), a / 2, Fraction(1, 2), 1 - a / 2, Fraction(1)})
            xs = [float(x) for x in knots]
            ys = [float(f(x)) for x in knots]
        ax.plot(xs, ys, color="black", lw=1.2)
        ax.plot([lo, hi], [lo, hi], color="0.6", lw=0.8, ls="--")
        cmap = plt.get_cmap("viridis")
        for k, cyc in enumerate(cycles):
            pts = [float(x) for x in cyc.points]
            color = cmap(k / max(1, len(cycles) - 1))
            ax.plot(pts, pts, "o", ms=3, color=color)
        ax.set_xlim(lo, hi)
        ax.set_ylim(lo, hi)
        ax.set_aspect("equal")
        if title:
            ax.set_title(title)
        return _save(fig, path)
