"""Delimited-text output for runs, sweeps, and transition reports.

All writers emit comma-separated values with a fixed header row, ``\\n``
line endings, floats at 15 significant digits, and empty fields for
missing values.  Identical inputs therefore produce byte-identical
files, which the test suite relies on.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from .experiments import SweepRow, TransitionReport
from .observables import ObservableSeries

__all__ = [
    "format_number",
    "write_series_csv",
    "write_snapshot_csv",
    "write_sweep_csv",
    "write_transition_csv",
]


def format_number(value) -> str:
    """15-significant-digit text for a number; empty string for None."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".15g")


def _write_rows(path: str | os.PathLike, header: str, rows: Iterable[str]) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def write_series_csv(path: str | os.PathLike, series: ObservableSeries) -> None:
    """Time series of spread and entanglement entropy, one row per record."""
    _write_rows(
        path,
        "t,sigma,entropy",
        (
            f"{int(t)},{format_number(s)},{format_number(e)}"
            for t, s, e in zip(series.t, series.sigma, series.entropy)
        ),
    )


def write_snapshot_csv(path: str | os.PathLike, probabilities: np.ndarray) -> None:
    """Position distribution at one instant, positions centered on 0."""
    half_width = (probabilities.size - 1) // 2
    _write_rows(
        path,
        "x,p",
        (
            f"{x},{format_number(p)}"
            for x, p in zip(range(-half_width, half_width + 1), probabilities)
        ),
    )


def write_sweep_csv(path: str | os.PathLike, rows: Iterable[SweepRow]) -> None:
    """End-of-run observables against the swept angle."""
    _write_rows(
        path,
        "theta1,sigma_over_L,entropy",
        (
            f"{format_number(r.theta1)},{format_number(r.sigma_over_L)},{format_number(r.entropy)}"
            for r in rows
        ),
    )


def write_transition_csv(path: str | os.PathLike, reports: Iterable[TransitionReport]) -> None:
    """Detected and predicted transition times, one row per analysis."""
    _write_rows(
        path,
        "theta2,L,tc_detected,tc_predicted,t2_detected",
        (
            ",".join(
                (
                    format_number(r.theta2),
                    format_number(r.L),
                    format_number(r.tc_detected),
                    format_number(r.tc_predicted),
                    format_number(r.t2_detected),
                )
            )
            for r in reports
        ),
    )
