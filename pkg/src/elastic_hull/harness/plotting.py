"""Matplotlib figures written next to the CSV outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_metrics(metrics: dict, path, eps_v: float | None = None):
    """Max speed, perimeter and distinct contacted nails against tick."""
    fig, axes = plt.subplots(3, 1, figsize=(7, 7), sharex=True)
    ticks = metrics["tick"]
    speed = np.maximum(metrics["max_speed"], 1e-12)
    axes[0].semilogy(ticks, speed, lw=1)
    if eps_v:
        axes[0].axhline(eps_v, color="k", ls="--", lw=0.8, label="convergence threshold")
        axes[0].legend(loc="upper right", frameon=False)
    axes[0].set_ylabel("max speed (cells/tick)")
    axes[1].plot(ticks, metrics["perimeter"], lw=1)
    axes[1].set_ylabel("band length (cells)")
    axes[2].step(ticks, metrics["contacts"], where="post", lw=1)
    axes[2].set_ylabel("nails touched")
    axes[2].set_xlabel("tick")
    _save(fig, path)


def plot_band(grid, positions, path, sim_hull=None, oracle_hull=None, initial=None):
    fig, ax = plt.subplots(figsize=(6, 6))
    nails = grid.nail_array
    ax.scatter(nails[:, 0], nails[:, 1], s=12, c="k", zorder=3, label="nails")
    if initial is not None:
        ring = np.vstack([initial, initial[:1]])
        ax.plot(ring[:, 0], ring[:, 1], c="0.7", lw=0.8, label="initial band")
    ring = np.vstack([positions, positions[:1]])
    ax.plot(ring[:, 0], ring[:, 1], c="r", lw=1.0, label="band")
    for hull, style, label in ((oracle_hull, dict(c="b", ls="--"), "Graham scan"),
                               (sim_hull, dict(c="g", ls=":"), "read off band")):
        if hull is not None and len(hull):
            v = hull.as_array()
            v = np.vstack([v, v[:1]])
            ax.plot(v[:, 0], v[:, 1], lw=1.2, label=label, **style)
    ax.set_aspect("equal")
    ax.set_xlim(0, grid.width)
    ax.set_ylim(0, grid.height)
    ax.legend(loc="upper right", fontsize=8, frameon=False)
    _save(fig, path)


def plot_bench(report, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for strategy, marker in (("GRID", "o"), ("LINEAR", "s")):
        rows = sorted((r for r in report.rows if r.strategy == strategy), key=lambda r: r.nail_count)
        ax.loglog([r.nail_count for r in rows], [r.mean_ns for r in rows],
                  marker=marker, label=strategy.lower())
    ax.set_xlabel("nails")
    ax.set_ylabel("ns per lookup")
    ax.legend(frameon=False)
    _save(fig, path)


def plot_campaign(report, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    colours = {"pass": "tab:green", "mismatch": "tab:red", "nonconverged": "tab:orange"}
    for status, colour in colours.items():
        rows = [r for r in report.rows if r.status == status]
        if rows:
            ax.scatter([r.index for r in rows], [r.ticks for r in rows], c=colour, s=14, label=status)
    ax.set_xlabel("instance")
    ax.set_ylabel("ticks to fixed band")
    ax.legend(frameon=False)
    _save(fig, path)
