"""Report figures: timeline strips, P/R/F1 bars and benchmark timings.

Figures are rendered off-screen with the Agg backend and written as PNG.
"""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import TemporalGraph, TimexMention  # noqa: E402
from .evaluate import PRF  # noqa: E402
from .io import atomic_write_bytes  # noqa: E402
from .timeline import Timeline  # noqa: E402

STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}
EVENT_COLOR = "#e8a33d"
TIMEX_COLOR = "#3d8ee8"


def _save(fig, path) -> None:
    buf = io.BytesIO()
    # no Software tag, so identical figures give identical bytes across matplotlib versions
    fig.savefig(buf, format="png", bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    atomic_write_bytes(path, buf.getvalue())


def plot_timeline(timeline: Timeline, graph: TemporalGraph, path, title: str = "") -> None:
    """One column per timeline group, members stacked inside it."""
    with plt.rc_context(STYLE):
        n = max(len(timeline.groups), 1)
        height = max((len(g) for g in timeline.groups), default=1)
        fig, ax = plt.subplots(figsize=(max(4.0, 1.4 * n), 1.2 + 0.45 * height))
        ax.axhline(0, color="0.6", lw=1, zorder=0)
        for gi, group in enumerate(timeline.groups):
            ax.plot([gi], [0], marker="o", color="0.3", zorder=2)
            for row, node_id in enumerate(group):
                node = graph.node(node_id)
                if isinstance(node, TimexMention):
                    label, color = f"{node.text}\n{node.value or '?'}", TIMEX_COLOR
                else:
                    label, color = node.surface or node.lemma, EVENT_COLOR
                ax.annotate(label, (gi, 0), xytext=(gi, 0.4 + 0.45 * row), ha="center", va="bottom",
                            fontsize=8, bbox={"boxstyle": "round,pad=0.25", "fc": color, "ec": "none",
                                              "alpha": 0.8})
        ax.set_xlim(-0.7, n - 0.3)
        ax.set_ylim(-0.3, 0.9 + 0.45 * height)
        ax.set_xticks(range(len(timeline.groups)))
        ax.set_xticklabels([str(i + 1) for i in range(len(timeline.groups))])
        ax.set_yticks([])
        ax.spines["left"].set_visible(False)
        ax.set_xlabel("timeline position")
        if title:
            ax.set_title(title)
        _save(fig, path)


def plot_prf(rows: dict, path, title: str = "Evaluation") -> None:
    """Grouped precision / recall / F1 bars for every PRF row of a report."""
    names = [n for n, v in rows.items() if isinstance(v, PRF)]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(names) + 1.5), 3.2))
        width = 0.26
        for k, (metric, color) in enumerate((("precision", "#4c72b0"), ("recall", "#dd8452"),
                                             ("f1", "#55a868"))):
            xs = [i + (k - 1) * width for i in range(len(names))]
            ax.bar(xs, [getattr(rows[n], metric) for n in names], width, label=metric, color=color)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=20, ha="right")
        ax.set_ylim(0, 1.05)
        ax.set_ylabel("score")
        ax.set_title(title)
        ax.legend(frameon=False, ncol=3, loc="lower center", bbox_to_anchor=(0.5, 1.08))
        _save(fig, path)


def plot_bench(timings: dict, path, title: str = "Timex extraction runtime") -> None:
    """Horizontal bars of seconds per system."""
    names = list(timings)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 0.6 * len(names) + 1.0))
        bars = ax.barh(names, [timings[n] for n in names], color=["#4c72b0", "#c44e52", "#8172b3"][:len(names)])
        for bar, name in zip(bars, names):
            ax.text(bar.get_width(), bar.get_y() + bar.get_height() / 2, f" {timings[name]:.3f}s",
                    va="center", fontsize=8)
        ax.invert_yaxis()
        ax.set_xlabel("seconds")
        ax.set_title(title)
        _save(fig, path)
