"""Bifurcation diagrams rendered with matplotlib's Agg backend."""

from __future__ import annotations

from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from acmorse.grid import FloatArray  # noqa: E402
from acmorse.solver.models import Branch, EventKind, SolutionPoint  # noqa: E402


def signed_amplitude(point: SolutionPoint, phi: FloatArray, weights: FloatArray) -> float:
    """||u||_inf signed by <u, phi>_W; the mean decides when the projection vanishes."""
    u = point.u.values
    projection = float(np.sum(u * phi * weights))
    if abs(projection) <= 1e-12 * (1.0 + point.sup_norm):
        projection = float(u.mean())
    return float(np.copysign(point.sup_norm, projection))


def bifurcation_figure(
    branches: Sequence[Branch],
    phi: FloatArray,
    weights: FloatArray,
    *,
    title: str = "",
) -> Figure:
    """epsilon against signed sup norm, one marker color per Morse index."""
    fig, ax = plt.subplots(figsize=(7, 5))
    indices = sorted({p.index for b in branches for p in b.points})
    cmap = plt.get_cmap("viridis", max(len(indices), 1))
    color_of = {k: cmap(i) for i, k in enumerate(indices)}

    for branch in branches:
        eps = np.array(branch.epsilons)
        amplitude = np.array([signed_amplitude(p, phi, weights) for p in branch.points])
        ax.plot(eps, amplitude, color="0.75", linewidth=0.8, zorder=1)
        ax.scatter(
            eps,
            amplitude,
            c=[color_of[p.index] for p in branch.points],
            s=8,
            zorder=2,
        )
        for event in branch.events:
            if event.kind in (EventKind.BRANCH_POINT, EventKind.FOLD):
                ax.axvline(event.epsilon, color="0.9", linewidth=0.6, zorder=0)

    for k in indices:
        ax.scatter([], [], color=color_of[k], s=12, label=f"index {k}")
    if indices:
        ax.legend(loc="best", fontsize="small")
    ax.set_xlabel(r"$\varepsilon$")
    ax.set_ylabel(r"$\pm\|u\|_\infty$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def close_figure(fig: Figure) -> None:
    plt.close(fig)
