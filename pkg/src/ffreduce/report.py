"""Matplotlib figures for bench, BFS and bounds output.

Figures are written next to the CSV/JSON output and never replace it.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import counting_bound_log  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "ffreduce",
    "path.simplify": False,
}


def _save(fig, path) -> None:
    # fixed metadata keeps repeated runs byte-identical for png/svg/pdf
    fig.savefig(path, bbox_inches="tight", metadata=_metadata(path))
    plt.close(fig)


def _metadata(path) -> dict:
    suffix = str(path).rsplit(".", 1)[-1].lower()
    if suffix == "svg":
        return {"Date": None}
    if suffix == "pdf":
        return {"CreationDate": None, "ModDate": None}
    if suffix == "png":
        return {"Software": None}
    return {}


def bench_figure(rows: list[dict], path) -> None:
    """Mean op count against n per algorithm, with n^2 and n^2/log_q n guides."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for algo in sorted({r["algo"] for r in rows}):
            pts = sorted((r["n"], r["mean_ops"]) for r in rows if r["algo"] == algo)
            ax.plot(*zip(*pts), marker="o", label=algo)
        ns = sorted({r["n"] for r in rows})
        if ns:
            ax.plot(ns, [n * n for n in ns], "k--", lw=0.8, label=r"$n^2$")
            guide = [(n, r["n2_over_logq_n"]) for n in ns for r in rows
                     if r["n"] == n and math.isfinite(r["n2_over_logq_n"])]
            guide = sorted(set(guide))
            if guide:
                ax.plot(*zip(*guide), "k:", lw=0.8, label=r"$n^2/\log_q n$")
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("row operations (mean)")
        ax.legend()
        _save(fig, path)


def histogram_figure(hist, path) -> None:
    """Ball sizes by radius against the counting bound, log scale."""
    q = hist.q
    ks = list(range(hist.diameter + 1))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(ks, [hist.counts.get(k, 0) for k in ks], color="0.7", label="elements at distance k")
        ax.plot(ks, hist.ball_sizes, "o-", label="ball size")
        ax.plot(ks, [q ** counting_bound_log(hist.n, q, k) for k in ks], "k--",
                label="counting bound")
        ax.axhline(hist.group_order, color="C3", lw=0.8, label="|GL(n,q)|")
        ax.set_yscale("log")
        ax.set_xlabel("k (row operations)")
        ax.set_ylabel("matrices")
        ax.set_title(f"GL({hist.n},{q})")
        ax.legend()
        _save(fig, path)


def bounds_figure(rows, q: int, path) -> None:
    """kmax * log_q(n) / n^2 against n."""
    pts = [(r.n, r.kmax_ratio) for r in rows if r.n > 1]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        if pts:
            ax.plot(*zip(*pts), marker="o")
        ax.axhline(1.0, color="k", ls="--", lw=0.8)
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel(r"$k_{max} \log_q n / n^2$")
        ax.set_title(f"q = {q}")
        _save(fig, path)
