"""
Evaluation Charts

Renders the bench timing table and the cross-validation summary as PNG
charts. Every chart function returns the chart metadata together with the
base64 encoded image, and optionally saves the image to disk.
"""
import base64
import io
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from .cross_validation import EvalReport

logger = logging.getLogger(__name__)

SCORE_METRICS = ('f1', 'precision', 'recall')


def _style_axes(ax, title: str, ylabel: str, x: np.ndarray, ticklabels) -> None:
    ax.set_title(title)
    ax.set_ylabel(ylabel)
    ax.set_xticks(x)
    ax.set_xticklabels(ticklabels, fontsize=8)
    ax.yaxis.grid(True, linestyle=':', alpha=0.6)
    ax.set_axisbelow(True)


def generate_bench_chart(table: pd.DataFrame, output_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Stacked generation/selection time bars, one bar per bench configuration.

    Args:
        table: Bench table from bench_scaling
        output_path: Where to write the PNG, if anywhere

    Returns:
        Chart metadata with the base64 PNG
    """
    positions = np.arange(len(table))
    ticks = [f"n={int(row.n_records)}\nd={int(row.n_features)}\nr={row.ratio:g}" for row in table.itertuples()]

    fig, ax = plt.subplots(figsize=(max(6, len(table) * 0.9), 6))
    ax.bar(positions, table['t_gen'], yerr=table['t_gen_std'], label='generation', color='steelblue', capsize=4)
    ax.bar(positions, table['t_sel'], bottom=table['t_gen'], label='selection', color='darkorange')
    ax.legend(loc='upper left')
    _style_axes(ax, 'Rule generation and selection time', 'Wall clock (s)', positions, ticks)

    fig.tight_layout()
    return save_or_return_chart(fig, output_path, "bench")


def generate_cv_chart(report: EvalReport, output_path: Optional[str] = None) -> Dict[str, Any]:
    """Mean and standard deviation of each score over the completed folds."""
    means = np.array([report.mean(m) for m in SCORE_METRICS])
    stds = np.array([report.std(m) for m in SCORE_METRICS])
    positions = np.arange(len(SCORE_METRICS))

    fig, ax = plt.subplots(figsize=(8, 6))
    ax.bar(positions, means, yerr=stds, color='seagreen', alpha=0.8, ecolor='black', capsize=8)
    for x, mean, std in zip(positions, means, stds):
        ax.annotate(f"{mean:.2f} ± {std:.2f}", (x, mean + std), xytext=(0, 4),
                    textcoords='offset points', ha='center', fontsize=9)

    ticks = [m.upper() if m == 'f1' else m.capitalize() for m in SCORE_METRICS]
    _style_axes(ax, f"{report.dataset}: {len(report.folds)}-fold scores", 'Score', positions, ticks)
    ax.set_ylim(0, 1.15)
    ax.text(0.02, 0.02, f"{report.mean('n_rules'):.1f} rules, {report.mean('mean_atoms'):.2f} atoms per rule",
            transform=ax.transAxes, fontsize=9)

    fig.tight_layout()
    return save_or_return_chart(fig, output_path, "cv_summary")


def save_or_return_chart(fig: Figure, output_path: Optional[str], chart_type: str) -> Dict[str, Any]:
    """
    Encode a figure as base64 PNG, write it to `output_path` when given, and close it.

    A failed write is logged and reported as `file_path = None`; the encoded
    image is still returned.
    """
    written = None
    try:
        if output_path:
            try:
                Path(output_path).parent.mkdir(parents=True, exist_ok=True)
                fig.savefig(output_path, bbox_inches='tight', dpi=150)
                written = output_path
                logger.info(f"Wrote {chart_type} chart to {output_path}")
            except OSError as e:
                logger.error(f"Could not write {chart_type} chart to {output_path}: {e}")

        png = io.BytesIO()
        fig.savefig(png, format='png', bbox_inches='tight', dpi=100)
        encoded = base64.b64encode(png.getvalue()).decode('ascii')
    finally:
        plt.close(fig)

    return {'chart_type': chart_type, 'file_path': written, 'image_base64': encoded}
