"""Figure rendering for convergence tables.

The CLI report path saves one PNG next to each CSV it writes: measured
values against n, with the analytic bound dashed when present and exact
zeros marked separately (a log axis cannot carry them).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sequences import ConvergenceTable


def render_table_png(table: ConvergenceTable, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    ns = [r.n for r in table.rows]
    values = [r.value for r in table.rows]
    bounds = [r.bound for r in table.rows]
    zero_ns = [r.n for r in table.rows if r.value == 0.0]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    positive = [(n, v) for n, v in zip(ns, values) if v > 0]
    use_log = bool(positive) and all(v > 0 for v in values if v != 0.0)
    if positive:
        xs, ys = zip(*positive)
        ax.plot(xs, ys, "o-", ms=3, lw=1, color="tab:blue", label="measured")
    if any(b is not None for b in bounds):
        bx = [n for n, b in zip(ns, bounds) if b is not None and (not use_log or b > 0)]
        by = [b for b in bounds if b is not None and (not use_log or b > 0)]
        ax.plot(bx, by, "--", lw=1, color="tab:orange", label="bound")
    if zero_ns:
        # exact zeros sit on the axis; show them as markers at the bottom
        floor = min((v for v in values if v > 0), default=1e-16)
        y0 = floor / 10 if use_log else 0.0
        ax.plot(zero_ns, [y0] * len(zero_ns), "x", color="tab:green", label="exact zero")
    if use_log:
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("value")
    ax.set_title(title or table.label)
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
