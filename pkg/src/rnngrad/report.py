"""Headless figure rendering and delimited summaries of a gradient log.

Mirrors the browser explorer's four views with matplotlib so a run can be
reviewed without serving anything: an overview bar chart of per-record max
gradients, a per-batch view (label strip over stacked per-step gradient
bars, shaded by origin distance), and the per-origin horizon projection.
`write_report` drops the figures next to a summary.csv.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .gradlog import BatchRecord, GradientLog, summary

_SELECTED = "#e75480"  # selected record bar
_CORRECT = "#1a7a2e"
_WRONG = "#c0392b"

_GLYPHS = {" ": "␣", "\n": "¶", "\t": "→", "\r": "␍"}


def _visible(ch: str) -> str:
    return _GLYPHS.get(ch, ch)


def distance_shades(k: int):
    """k+1 shades of one hue, darkest at distance 0."""
    greens = matplotlib.colormaps["Greens"]
    return [greens(0.95 - 0.65 * d / max(k, 1)) for d in range(k + 1)]


def fig_overview(log: GradientLog, selected: int | None = None) -> plt.Figure:
    """Area-1 style overview: one bar per record, height = max gradient."""
    s = summary(log)
    fig, ax = plt.subplots(figsize=(max(6, s.record_count * 0.08), 3))
    colors = ["#4878a8"] * s.record_count
    if selected is not None and 0 <= selected < s.record_count:
        colors[selected] = _SELECTED
    ax.bar(range(s.record_count), s.per_record_max, color=colors, width=0.85)
    ax.set_xlabel("record")
    ax.set_ylabel("max gradient")
    ax.set_title(f"max gradient per recorded batch "
                 f"(global max {s.global_max_gradient:.3g})")
    fig.tight_layout()
    return fig


def _stack_rows(record: BatchRecord, k: int) -> np.ndarray:
    """Segment heights by (distance d, step j); zeros where not stored."""
    n = record.n
    rows = np.zeros((k + 1, n))
    for t, row in enumerate(record.magnitudes):
        for d, m in enumerate(row):
            rows[d, t - d] = m
    return rows


def fig_batch(record: BatchRecord, k: int) -> plt.Figure:
    """Areas 2+3: colored label strip above per-step stacked gradient bars."""
    n = record.n
    fig, (ax_lab, ax_bar) = plt.subplots(
        2, 1, figsize=(max(6, n * 0.42), 4.6), sharex=True,
        gridspec_kw={"height_ratios": [1, 4]})

    correct = record.correct
    for j in range(n):
        color = _CORRECT if correct[j] else _WRONG
        ax_lab.text(j, 0.65, _visible(record.true_labels[j]), ha="center",
                    va="center", family="monospace", fontsize=11)
        ax_lab.text(j, 0.25, _visible(record.predicted_labels[j]), ha="center",
                    va="center", family="monospace", fontsize=11, color=color)
    ax_lab.set_ylim(0, 1)
    ax_lab.set_yticks([0.25, 0.65])
    ax_lab.set_yticklabels(["predicted", "true"], fontsize=8)
    ax_lab.set_title(f"batch {record.batch_index} "
                     f"(chars {record.char_offset}..{record.char_offset + n - 1}, "
                     f"max gradient {record.max_gradient:.3g})")

    rows = _stack_rows(record, k)
    shades = distance_shades(k)
    bottom = np.zeros(n)
    for d in range(k + 1):
        ax_bar.bar(range(n), rows[d], bottom=bottom, color=shades[d], width=0.85,
                   label=f"d={d}")
        bottom += rows[d]
    ax_bar.set_xlim(-0.5, n - 0.5)
    ax_bar.set_xlabel("step")
    ax_bar.set_ylabel("gradient magnitude")
    ax_bar.legend(ncols=min(k + 1, 6), fontsize=7, title="origin distance",
                  title_fontsize=7)
    fig.tight_layout()
    return fig


def fig_horizon(record: BatchRecord, origin: int) -> plt.Figure:
    """Area 4: one origin's contributions by step j, rescaled to their max."""
    mags = record.magnitudes[origin]
    steps = [origin - d for d in range(len(mags))][::-1]  # j ascending
    values = mags[::-1]
    peak = max(values) or 1.0
    fig, ax = plt.subplots(figsize=(4, 2.6))
    ax.bar(steps, [v / peak for v in values], color="#2c7fb8", width=0.8)
    ax.set_xlabel("step")
    ax.set_ylabel("relative magnitude")
    ax.set_title(f"gradient horizon of origin {origin} "
                 f"('{_visible(record.true_labels[origin])}')")
    ax.set_xticks(steps)
    fig.tight_layout()
    return fig


def write_summary_csv(log: GradientLog, path: str) -> None:
    s = summary(log)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["record", "batch_index", "char_offset", "max_gradient",
                    "accuracy", "batch_loss"])
        for i, r in enumerate(log.records):
            w.writerow([i, r.batch_index, r.char_offset,
                        repr(r.max_gradient), f"{r.accuracy:.6f}",
                        repr(r.batch_loss)])


def write_report(log: GradientLog, out_dir: str, batch: int | None = None,
                 origin: int | None = None) -> list[str]:
    """Render summary.csv plus the three figures; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    k = log.meta.horizon
    records = {r.batch_index: (i, r) for i, r in enumerate(log.records)}
    if batch is None:
        batch = log.records[0].batch_index
    if batch not in records:
        raise ValueError(f"no record for batch {batch}; "
                         f"available: {sorted(records)}")
    idx, record = records[batch]
    if origin is None:
        # origin holding the largest recorded magnitude
        origin = max(range(record.n),
                     key=lambda t: max(record.magnitudes[t]))

    paths = []

    def save(fig: plt.Figure, name: str) -> None:
        path = os.path.join(out_dir, name)
        fig.savefig(path, dpi=130)
        plt.close(fig)
        paths.append(path)

    csv_path = os.path.join(out_dir, "summary.csv")
    write_summary_csv(log, csv_path)
    paths.append(csv_path)
    save(fig_overview(log, selected=idx), "overview.png")
    save(fig_batch(record, k), f"batch_{batch}.png")
    save(fig_horizon(record, origin), f"horizon_{batch}_origin_{origin}.png")
    return paths
