"""Static SVG figures. Output is byte-reproducible: no dates, fixed hash salt."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams["svg.hashsalt"] = "barocorr"
plt.rcParams["svg.fonttype"] = "path"

_META = {"Date": None, "Creator": "barocorr"}


def _save(fig, path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)
    return path


def _x(series):
    return series.dates if series.dates is not None else np.arange(len(series))


def line_plot(path, series_list, title="", ylabel=""):
    fig, ax = plt.subplots(figsize=(10, 4))
    for s in series_list:
        ax.plot(_x(s), s.values, lw=0.8, label=s.label)
    ax.set_title(title)
    ax.set_ylabel(ylabel)
    if len(series_list) > 1:
        ax.legend()
    return _save(fig, path)


def bar_plot(path, x, y, title="", xlabel="", ylabel=""):
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(x, y, width=0.6)
    ax.axhline(0, color="black", lw=0.6)
    ax.set(title=title, xlabel=xlabel, ylabel=ylabel)
    return _save(fig, path)


def scatter_plot(path, x, y, title="", xlabel="", ylabel="", sizes=None):
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.scatter(x, y, s=8 if sizes is None else sizes, alpha=0.6)
    ax.set(title=title, xlabel=xlabel, ylabel=ylabel)
    return _save(fig, path)


def overlay_plot(path, hosp, marks, title=""):
    """Admissions as a line, pattern occurrences as vertical markers."""
    fig, ax = plt.subplots(figsize=(10, 4))
    ax.plot(_x(hosp), hosp.values, lw=0.7, label=hosp.label)
    xs = _x(marks)
    for x, v in zip(xs, marks.values):
        if v:
            ax.axvline(x, color="tab:orange", lw=0.8)
    ax.set_title(title)
    ax.legend()
    return _save(fig, path)


def comparison_plot(path, a, b, title=""):
    """Two series on twin y axes."""
    fig, ax = plt.subplots(figsize=(10, 4))
    ax.plot(_x(a), a.values, lw=0.8, color="tab:blue", label=a.label)
    ax.set_ylabel(a.label)
    ax2 = ax.twinx()
    ax2.plot(_x(b), b.values, lw=0.8, color="tab:red", label=b.label)
    ax2.set_ylabel(b.label)
    ax.set_title(title)
    return _save(fig, path)
