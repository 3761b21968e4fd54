"""Figure rendering for the command-line reports.

Companion plots for the CSV files; the CSVs remain the authoritative
output.  The Agg backend is forced so rendering works headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import SweepRow, TransitionAnalysis
from .observables import ObservableSeries

__all__ = [
    "save_series_figure",
    "save_snapshot_figure",
    "save_sweep_figure",
    "save_transition_figure",
]


def save_series_figure(path: str | os.PathLike, series: ObservableSeries) -> None:
    """Spread and entanglement entropy against time, stacked panels."""
    fig, (ax_sigma, ax_entropy) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 6.4))
    ax_sigma.plot(series.t, series.sigma, lw=1.0)
    ax_sigma.set_ylabel(r"$\sigma(t)$")
    ax_entropy.plot(series.t, series.entropy, lw=1.0, color="C1")
    ax_entropy.set_ylabel(r"$S_E(t)$")
    ax_entropy.set_xlabel("t")
    ax_entropy.set_ylim(0.0, 1.05)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_snapshot_figure(path: str | os.PathLike, probabilities: np.ndarray, t: int) -> None:
    """Position distribution at one instant."""
    half_width = (probabilities.size - 1) // 2
    x = np.arange(-half_width, half_width + 1)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(x, probabilities, lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("P(x)")
    ax.set_title(f"t = {t}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sweep_figure(path: str | os.PathLike, rows: list[SweepRow]) -> None:
    """End-of-run spread and entropy against the swept angle."""
    theta = [r.theta1 for r in rows]
    fig, (ax_sigma, ax_entropy) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 6.4))
    ax_sigma.plot(theta, [r.sigma_over_L for r in rows], marker=".", lw=0.8)
    ax_sigma.set_ylabel(r"$\sigma(L)/L$")
    ax_entropy.plot(theta, [r.entropy for r in rows], marker=".", lw=0.8, color="C1")
    ax_entropy.set_ylabel(r"$S_E(L)$")
    ax_entropy.set_xlabel(r"$\theta_1$")
    ax_entropy.set_xlim(0.0, np.pi / 2.0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_transition_figure(path: str | os.PathLike, analysis: TransitionAnalysis) -> None:
    """Test and reference spread with detected/predicted times marked."""
    rep = analysis.report
    fig, (ax_sigma, ax_entropy) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 6.4))
    ax_sigma.plot(analysis.test.series.t, analysis.test.series.sigma, lw=1.0, label="test")
    ax_sigma.plot(
        analysis.reference.series.t, analysis.reference.series.sigma,
        lw=1.0, ls="--", label="reference",
    )
    ax_sigma.axvline(rep.tc_predicted, color="k", ls=":", lw=0.8, label=r"$t_c$ predicted")
    if rep.tc_detected is not None:
        ax_sigma.axvline(rep.tc_detected, color="C3", ls="-.", lw=0.8, label=r"$t_c$ detected")
    ax_sigma.set_ylabel(r"$\sigma(t)$")
    ax_sigma.legend(fontsize=8)
    ax_entropy.plot(analysis.test.series.t, analysis.test.series.entropy, lw=1.0, color="C1")
    if rep.t2_detected is not None:
        ax_entropy.axvline(rep.t2_detected, color="C3", ls="-.", lw=0.8)
    ax_entropy.set_ylabel(r"$S_E(t)$")
    ax_entropy.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
