"""Matplotlib rendering of :class:`~inatt.figures.FigureData`.

The CSV is the contract; these files are a convenience.  SVG output is made
byte-stable by fixing the hash salt and dropping the date stamp.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

from .figures import FigureData  # noqa: E402

REGION_COLORS = {
    "trivial": "#cccccc",
    "less_complex": "#b8e6b8",
    "more_complex": "#f4b6b6",
    "equivalent": "#f0e2a8",
    "incomparable": "#ffffff",
}

STYLE = {
    "svg.hashsalt": "inatt",
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
}


def _new_axes(width: float = 5.0):
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, width * golden))
    return fig, ax


def _plot_figure1(data: FigureData, ax) -> None:
    q = np.array(data.column("q"), dtype=float)
    ax.plot(q, data.column("g"), color="green", label="g(q)")
    ax.plot(q, data.column("kappa_c"), color="red", label=r"$\kappa c(q)$")
    ax.plot(q, data.column("h"), color="black", lw=0.8, ls="--", label=r"$g - \kappa c$")
    ax.plot(q, data.column("envelope"), color="blue", lw=1.6, label="concave closure")
    delta = float(data.meta_value("delta"))
    for x in (delta, 1.0 - delta):
        ax.axvline(x, color="grey", lw=0.6, ls=":")
    ax.set_xlabel("posterior q")
    ax.legend(loc="lower center")


def _plot_figure2(data: FigureData, ax) -> None:
    ax.plot(data.column("p"), data.column("accuracy"), color="blue")
    ax.set_xlabel("prior p")
    ax.set_ylabel("expected accuracy")
    ax.set_ylim(0.45, 1.02)


def _plot_regions(data: FigureData, ax) -> None:
    names = list(REGION_COLORS)
    lattice = [r for r in data.rows if r[3] in REGION_COLORS]
    kappas = sorted({r[0] for r in lattice})
    phis = sorted({r[1] for r in lattice})
    grid = np.zeros((len(phis), len(kappas)))
    ki = {k: i for i, k in enumerate(kappas)}
    fi = {f: i for i, f in enumerate(phis)}
    for k, f, _, region in lattice:
        grid[fi[f], ki[k]] = names.index(region)
    dk = kappas[1] - kappas[0] if len(kappas) > 1 else 1.0
    df = phis[1] - phis[0] if len(phis) > 1 else 1.0
    extent = (kappas[0] - dk / 2, kappas[-1] + dk / 2, phis[0] - df / 2, phis[-1] + df / 2)
    ax.imshow(grid, origin="lower", extent=extent, aspect="auto", interpolation="nearest",
              cmap=ListedColormap([REGION_COLORS[n] for n in names]), vmin=0, vmax=len(names) - 1)
    curve = sorted({(r[0], r[2]) for r in lattice})
    ax.plot([k for k, _ in curve], [p for _, p in curve], color="blue", label=r"$\phi_w$")
    for k, f, _, region in data.rows:
        if region == "reference":
            ax.plot([k], [f], "ko", ms=4)
        elif region == "constructed":
            ax.plot([k], [f], "ks", ms=4, mfc="white")
    ax.set_xlabel(r"difficulty $\kappa$")
    ax.set_ylabel(r"ex-ante uncertainty $\phi$")
    present = sorted({r[3] for r in lattice}, key=names.index)
    handles = [Patch(facecolor=REGION_COLORS[n], edgecolor="grey", label=n) for n in present]
    ax.legend(handles=handles, loc="upper left", bbox_to_anchor=(1.01, 1.0))


def _plot_curve(data: FigureData, ax) -> None:
    x_name, y_name = data.header[0], data.header[-1]
    ax.plot(data.column(x_name), data.column(y_name), marker=".", ms=3)
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)


RENDERERS = {
    "figure1": _plot_figure1,
    "figure2": _plot_figure2,
    "figure3": _plot_regions,
    "figure4": _plot_regions,
    "figure5": _plot_regions,
}


def render(data: FigureData, path: str | Path) -> Path:
    """Draw ``data`` to ``path``; the suffix picks the format (``.svg``, ``.png``, ``.pdf``)."""
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, ax = _new_axes()
        RENDERERS.get(data.name, _plot_curve)(data, ax)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
        plt.close(fig)
    return path
