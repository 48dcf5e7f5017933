"""Figure rendering for evaluation reports.

Figures are written next to the delimited/JSON outputs: a per-subgroup
accuracy bar chart and a disparity-ratio chart with the parity line at 1.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import SubgroupReport


def _subtype_rows(report: SubgroupReport):
    # Skip the Type 4 rollup row and empty subgroups in charts.
    return [r for r in report.rows if r.label != "4" and r.n > 0]


def plot_subgroup_accuracy(report: SubgroupReport, path) -> None:
    rows = _subtype_rows(report)
    labels = [r.label for r in rows]
    values = [float(r.accuracy) * 100 for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = range(len(labels))
    ax.bar(xs, values, color="#4878a8")
    ax.set_xticks(list(xs), labels)
    ax.axhline(
        float(report.aggregate_accuracy) * 100,
        color="gray",
        linestyle="--",
        linewidth=1,
        label="aggregate",
    )
    ax.set_xlabel("Verb type")
    ax.set_ylabel("Exact-match accuracy (%)")
    ax.set_ylim(0, 105)
    ax.legend(loc="lower left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_disparity_ratios(report: SubgroupReport, path) -> None:
    rows = _subtype_rows(report)
    labels = [r.label for r in rows]
    values = [
        0.0 if r.disparity_ratio is None else float(r.disparity_ratio)
        for r in rows
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = range(len(labels))
    bars = ax.bar(xs, values, color="#a85448")
    ax.set_xticks(list(xs), labels)
    ax.axhline(1.0, color="gray", linestyle="--", linewidth=1, label="parity")
    for bar, r in zip(bars, rows):
        if r.disparity_ratio is None:
            continue
        ax.annotate(
            f"{float(r.disparity_ratio):.2f}",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom",
            fontsize=8,
        )
    ax.set_xlabel("Verb type")
    ax.set_ylabel("Disparity ratio (error share / data share)")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report_figures(report: SubgroupReport, out_dir) -> list:
    from pathlib import Path

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    acc_path = out_dir / "subgroup_accuracy.png"
    disp_path = out_dir / "disparity_ratios.png"
    plot_subgroup_accuracy(report, acc_path)
    plot_disparity_ratios(report, disp_path)
    return [acc_path, disp_path]
