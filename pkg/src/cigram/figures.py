"""Matplotlib figures written next to the exact reports.

Figures are illustrations only; the JSON/text reports remain the exact record.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .exact import ExactMatrix  # noqa: E402
from .pipeline import Analysis  # noqa: E402


def _slug(name: str) -> str:
    keep = [c if c.isalnum() else "_" for c in name]
    return "".join(keep).strip("_") or "case"


def matrix_heatmap(ax, m: ExactMatrix, title: str) -> None:
    values = [[float(x) for x in m.row(i)] for i in range(m.rows)]
    vmax = max((abs(v) for r in values for v in r), default=1.0) or 1.0
    im = ax.imshow(values, cmap="RdBu_r", vmin=-vmax, vmax=vmax)
    if m.rows <= 8:
        for i in range(m.rows):
            for j in range(m.cols):
                ax.text(j, i, str(m[i, j]), ha="center", va="center", fontsize=8)
    ax.set_xticks(range(m.cols))
    ax.set_yticks(range(m.rows))
    ax.set_xticklabels(range(1, m.cols + 1))
    ax.set_yticklabels(range(1, m.rows + 1))
    ax.set_title(title)
    plt.colorbar(im, ax=ax, fraction=0.046, pad=0.04)


def spectrum_plot(ax, a: Analysis) -> None:
    """Local exponents at zero as points exp(2 pi i rho), sized by multiplicity."""
    t = [2 * math.pi * k / 200 for k in range(201)]
    ax.plot([math.cos(s) for s in t], [math.sin(s) for s in t], color="0.8", lw=1)
    for e in a.spectrum.exponents:
        angle = 2 * math.pi * float(e.rho)
        x, y = math.cos(angle), math.sin(angle)
        ax.scatter([x], [y], s=60 * e.mu, color="C0", zorder=3)
        ax.annotate(f"{e.rho}: mu={e.mu}, nu={e.nu}", (x, y), textcoords="offset points",
                    xytext=(6, 6), fontsize=8)
    ax.set_aspect("equal")
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.4, 1.4)
    ax.set_title(f"exponents at 0 (Q_red = {a.spectrum.Q_red})")


def write_figures(a: Analysis, directory: str | Path) -> list[Path]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _slug(a.spec.name)
    written = []

    fig, axes = plt.subplots(1, 2, figsize=(10, 4.5))
    matrix_heatmap(axes[0], a.rg.Xbar, "Gram matrix Xbar")
    matrix_heatmap(axes[1], a.stokes, "Stokes matrix S")
    fig.tight_layout()
    path = out_dir / f"{stem}_matrices.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(5, 4.5))
    spectrum_plot(ax, a)
    fig.tight_layout()
    path = out_dir / f"{stem}_spectrum.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
