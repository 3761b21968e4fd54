"""Declarative experiment runner: single walks, angle sweeps, transition analysis.

An :class:`ExperimentConfig` describes one walk (or a family of walks
swept over an angle); :func:`run` executes it and returns one
:class:`ObservableSeries` per swept value.  On top of that sit the two
time-series detectors:

- :func:`detect_tc` finds the step at which an inhomogeneous run's
  spread first deviates from its single-angle reference by a relative
  threshold (default 0.01%).  The prediction to compare against is
  :func:`predicted_tc`, t_c = L / (3 cos theta2): the innermost type-1
  coins sit ~L/3 from the origin and the ballistic front advances by
  cos theta2 per step.
- :func:`detect_second_transition` finds where the entanglement-entropy
  fluctuations blow up (empirically near 2 t_c), operationalized as the
  rolling standard deviation exceeding three times its value just after
  t_c.

Runs are deterministic: identical configs produce identical series, and
sweep results are ordered by input index regardless of worker count.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import NumericalInvariantError, ValidationError
from .evolution import evolve, initial_state
from .layouts import CoinLayout, build_cantor, build_homogeneous, build_two_scatter
from .observables import ObservableSeries, SeriesRecorder

__all__ = [
    "ExperimentConfig",
    "SweepSpec",
    "RunResult",
    "SweepRow",
    "TransitionReport",
    "run",
    "predicted_tc",
    "detect_tc",
    "detect_second_transition",
    "angle_sweep_at_L",
    "transition_analysis",
    "theta1_grid",
    "parse_angle",
]

LAYOUT_KINDS = ("cantor", "homogeneous", "two_scatter")
OUTPUT_SINKS = ("series", "snapshots")

# accumulated total-probability drift allowed over a full run
NORM_TOLERANCE = 1e-9

_PI_FORM = re.compile(r"^\s*([+-]?)(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$", re.I)


def parse_angle(text: str | float) -> float:
    """Angle in radians from a float or a 'pi' fraction such as '2pi/5'."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip()
    try:
        return float(s)
    except ValueError:
        pass
    m = _PI_FORM.match(s)
    if not m:
        raise ValidationError(f"cannot parse angle {text!r}; use radians or e.g. 'pi/4'")
    sign = -1.0 if m.group(1) == "-" else 1.0
    num = float(m.group(2)) if m.group(2) else 1.0
    den = float(m.group(3)) if m.group(3) else 1.0
    return sign * num * math.pi / den


@dataclass
class SweepSpec:
    """Sweep one angle parameter over a list of values."""

    parameter: str  # "theta1" or "theta2"
    values: Sequence[float]


@dataclass
class ExperimentConfig:
    """Declarative description of one run or sweep.

    ``generation`` selects the chain size for cantor/two_scatter layouts
    (L = (3**g - 1) / 2); homogeneous layouts take ``L`` directly.
    ``steps`` defaults to L, ``snapshot_times`` to the final step.
    """

    layout_kind: str
    theta1: float
    theta2: float
    generation: int | None = None
    L: int | None = None
    steps: int | None = None
    record_every: int = 1
    snapshot_times: Sequence[int] | None = None
    sweep: SweepSpec | None = None
    outputs: Sequence[str] = OUTPUT_SINKS
    two_scatter_swap: bool = False

    def validate(self) -> list[str]:
        """Collect every violated constraint (empty list means valid)."""
        problems = []
        if self.layout_kind not in LAYOUT_KINDS:
            problems.append(
                f"layout_kind must be one of {LAYOUT_KINDS}, got {self.layout_kind!r}"
            )
        for name in ("theta1", "theta2"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                problems.append(f"{name} must be a finite angle in radians, got {v!r}")
        if self.layout_kind in ("cantor", "two_scatter"):
            minimum = 1 if self.layout_kind == "two_scatter" else 0
            if self.generation is None or not isinstance(self.generation, int) or self.generation < minimum:
                problems.append(
                    f"{self.layout_kind} layouts need an integer generation >= {minimum}, got {self.generation!r}"
                )
            if self.L is not None:
                problems.append("L is derived from the generation; do not set it")
        elif self.layout_kind == "homogeneous":
            if self.L is None or not isinstance(self.L, int) or self.L < 0:
                problems.append(f"homogeneous layouts need an integer L >= 0, got {self.L!r}")
            if self.generation is not None:
                problems.append("generation applies only to cantor/two_scatter layouts")
        half_width = self._half_width()
        if self.steps is not None:
            if not isinstance(self.steps, int) or self.steps < 0:
                problems.append(f"steps must be a nonnegative integer, got {self.steps!r}")
            elif half_width is not None and self.steps > half_width:
                problems.append(
                    f"steps = {self.steps} exceeds L = {half_width}; the run would touch the chain edge"
                )
        if not isinstance(self.record_every, int) or self.record_every < 1:
            problems.append(f"record_every must be a positive integer, got {self.record_every!r}")
        if self.snapshot_times is not None:
            steps = self.steps if self.steps is not None else half_width
            for t in self.snapshot_times:
                if not isinstance(t, int) or t < 0 or (steps is not None and t > steps):
                    problems.append(f"snapshot time {t!r} outside [0, {steps}]")
        if self.sweep is not None:
            if self.sweep.parameter not in ("theta1", "theta2"):
                problems.append(
                    f"sweep parameter must be 'theta1' or 'theta2', got {self.sweep.parameter!r}"
                )
            if len(self.sweep.values) == 0:
                problems.append("sweep values must be a nonempty list")
            for v in self.sweep.values:
                if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                    problems.append(f"sweep value {v!r} is not a finite angle")
        for sink in self.outputs:
            if sink not in OUTPUT_SINKS:
                problems.append(f"unknown output sink {sink!r}; known: {OUTPUT_SINKS}")
        return problems

    def _half_width(self) -> int | None:
        if self.layout_kind in ("cantor", "two_scatter"):
            if isinstance(self.generation, int) and self.generation >= 0:
                return (3**self.generation - 1) // 2
            return None
        return self.L if isinstance(self.L, int) and self.L >= 0 else None

    def normalized(self) -> "ExperimentConfig":
        """Validated copy with L, steps and snapshot_times made concrete."""
        problems = self.validate()
        if problems:
            raise ValidationError("invalid experiment config:\n" + "\n".join(f"- {p}" for p in problems))
        half_width = self._half_width()
        steps = self.steps if self.steps is not None else half_width
        snaps = self.snapshot_times if self.snapshot_times is not None else [steps]
        return replace(
            self,
            L=half_width if self.layout_kind == "homogeneous" else None,
            steps=steps,
            snapshot_times=list(snaps),
        )

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Build from a parsed JSON/TOML tree; angles may be 'pi/4' strings."""
        known = {
            "layout_kind", "theta1", "theta2", "generation", "L", "steps",
            "record_every", "snapshot_times", "sweep", "outputs", "two_scatter_swap",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
        missing = [k for k in ("layout_kind", "theta1", "theta2") if k not in data]
        if missing:
            raise ValidationError(f"missing required config keys: {', '.join(missing)}")
        kwargs = dict(data)
        for name in ("theta1", "theta2"):
            kwargs[name] = parse_angle(kwargs[name])
        if kwargs.get("sweep") is not None:
            sweep = kwargs["sweep"]
            if not isinstance(sweep, dict) or set(sweep) != {"parameter", "values"}:
                raise ValidationError("sweep must be a table with keys 'parameter' and 'values'")
            kwargs["sweep"] = SweepSpec(
                parameter=sweep["parameter"],
                values=[parse_angle(v) for v in sweep["values"]],
            )
        return cls(**kwargs)


@dataclass
class RunResult:
    """Series plus the angles that produced it."""

    theta1: float
    theta2: float
    series: ObservableSeries


def _build_base_layout(cfg: ExperimentConfig) -> CoinLayout:
    if cfg.layout_kind == "cantor":
        return build_cantor(cfg.generation, cfg.theta1, cfg.theta2)
    if cfg.layout_kind == "two_scatter":
        return build_two_scatter(cfg.generation, cfg.theta1, cfg.theta2, swap=cfg.two_scatter_swap)
    return build_homogeneous(cfg.L, cfg.theta2)


def _run_single(layout: CoinLayout, cfg: ExperimentConfig) -> RunResult:
    state = initial_state(layout.L)
    recorder = SeriesRecorder(
        record_every=cfg.record_every,
        snapshot_times=cfg.snapshot_times if "snapshots" in cfg.outputs else (),
        final_step=cfg.steps,
    )
    recorder.record(state)
    evolve(state, layout, cfg.steps, recorder.record)
    drift = abs(state.total_probability() - 1.0)
    if drift > NORM_TOLERANCE:
        raise NumericalInvariantError(
            f"total probability drifted by {drift:.3e} (> {NORM_TOLERANCE}) after {cfg.steps} steps"
        )
    return RunResult(layout.theta1, layout.theta2, recorder.build())


def run(config: ExperimentConfig, threads: int = 1) -> list[RunResult]:
    """Execute a config; one result per sweep value (one total if no sweep).

    The generated label sequence is built once and shared across sweep
    values.  Results keep the sweep's input order.
    """
    cfg = config.normalized()
    base = _build_base_layout(cfg)
    if cfg.sweep is None:
        return [_run_single(base, cfg)]
    if cfg.sweep.parameter == "theta1":
        layouts = [base.with_angles(v, cfg.theta2) for v in cfg.sweep.values]
    else:
        layouts = [base.with_angles(cfg.theta1, v) for v in cfg.sweep.values]
    if threads > 1 and len(layouts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda lay: _run_single(lay, cfg), layouts))
    return [_run_single(lay, cfg) for lay in layouts]


def predicted_tc(theta2: float, L: int) -> float:
    """Front-arrival time L / (3 cos theta2) at the innermost type-1 coins."""
    if not isinstance(L, (int, np.integer)) or isinstance(L, bool) or L < 1:
        raise ValidationError(f"L must be a positive integer, got {L!r}")
    c = math.cos(theta2)
    if c <= 0.0:
        raise ValidationError(
            f"no predicted transition for cos(theta2) = {c:.3g} <= 0: the front does not advance"
        )
    return L / (3.0 * c)


def detect_tc(
    series_test: ObservableSeries,
    series_reference: ObservableSeries,
    threshold: float = 1e-4,
) -> int | None:
    """First step where sigma deviates from the reference by ``threshold``.

    The deviation is relative, |sigma - sigma_ref| / sigma_ref, and rows
    with sigma_ref = 0 are skipped.  Returns None when the two series
    never part ways (not an error: equal-angle runs do exactly that).
    """
    if not np.array_equal(series_test.t, series_reference.t):
        raise ValidationError("test and reference series must share the same t grid")
    ref = series_reference.sigma
    ok = ref > 0.0
    dev = np.zeros_like(ref)
    dev[ok] = np.abs(series_test.sigma[ok] - ref[ok]) / ref[ok]
    hits = np.flatnonzero(ok & (dev >= threshold))
    if hits.size == 0:
        return None
    return int(series_test.t[hits[0]])


def detect_second_transition(
    series: ObservableSeries,
    t_c: int,
    window: int = 50,
) -> int | None:
    """First step after ``t_c`` where entropy fluctuations grow large.

    Operational definition: the rolling standard deviation of the
    entropy over trailing windows of ``window`` steps exceeds three
    times its value on the window ending at t_c + window (the quiet
    small-modulation regime just after t_c).  Returns None when the
    series never exceeds that level -- expected whenever the blow-up
    point ~2 t_c lies beyond the recorded range.
    """
    if window < 1:
        raise ValidationError(f"window must be >= 1, got {window}")
    ts, entropy = series.t, series.entropy
    if ts.size < 2:
        raise ValidationError("series too short for fluctuation analysis")
    strides = np.unique(np.diff(ts))
    if strides.size != 1:
        raise ValidationError("series must be uniformly sampled for fluctuation analysis")
    stride = int(strides[0])
    n_win = max(int(round(window / stride)), 2)
    if ts[-1] < t_c + window:
        raise ValidationError(
            f"series ends at t = {ts[-1]}, before the baseline window at t = {t_c + window}"
        )
    windows = np.lib.stride_tricks.sliding_window_view(entropy, n_win)
    rolling = windows.std(axis=1)  # rolling[i]: window ending at ts[i + n_win - 1]
    end_times = ts[n_win - 1:]
    base_idx = int(np.searchsorted(end_times, t_c + window))
    baseline = float(rolling[base_idx])
    candidates = np.flatnonzero((end_times > t_c) & (rolling > 3.0 * baseline))
    if candidates.size == 0:
        return None
    return int(end_times[candidates[0]])


@dataclass
class SweepRow:
    """One end-of-run record of an angle sweep."""

    theta1: float
    sigma_over_L: float
    entropy: float


def theta1_grid(n_steps: int = 64) -> np.ndarray:
    """Uniform grid of n_steps intervals covering [0, pi/2] inclusive."""
    if n_steps < 1:
        raise ValidationError(f"grid must have at least 1 step, got {n_steps}")
    return np.linspace(0.0, math.pi / 2.0, n_steps + 1)


def angle_sweep_at_L(config: ExperimentConfig, threads: int = 1) -> list[SweepRow]:
    """End-of-run (sigma/L, entropy) for every theta1 in the config's sweep.

    Each row comes from an independent full run of ``steps`` steps.
    """
    if config.sweep is None or config.sweep.parameter != "theta1":
        raise ValidationError("angle_sweep_at_L needs a config sweeping theta1")
    cfg = config.normalized()
    half_width = cfg._half_width()
    results = run(cfg, threads=threads)
    return [
        SweepRow(res.theta1, res.series.sigma[-1] / half_width, res.series.entropy[-1])
        for res in results
    ]


@dataclass
class TransitionReport:
    """Detected and predicted transition times for one (theta1, theta2) run."""

    theta2: float
    L: int
    tc_detected: int | None
    tc_predicted: float
    t2_detected: int | None


@dataclass
class TransitionAnalysis:
    """Report plus the two underlying runs, for inspection and plotting."""

    report: TransitionReport
    test: RunResult
    reference: RunResult


def transition_analysis(
    generation: int,
    theta1: float,
    theta2: float,
    layout_kind: str = "cantor",
    steps: int | None = None,
    threshold: float = 1e-4,
    window: int = 50,
    two_scatter_swap: bool = False,
) -> TransitionAnalysis:
    """Run an inhomogeneous walk and its single-angle companion, locate t_c.

    The reference run uses the same theta2, chain size, and recording
    grid, so the two spread series are directly comparable.  The
    entropy-fluctuation detector is applied after the detected t_c.
    """
    if layout_kind not in ("cantor", "two_scatter"):
        raise ValidationError(f"transition analysis runs on cantor or two_scatter chains, not {layout_kind!r}")
    test_cfg = ExperimentConfig(
        layout_kind=layout_kind,
        theta1=theta1,
        theta2=theta2,
        generation=generation,
        steps=steps,
        snapshot_times=[],
        two_scatter_swap=two_scatter_swap,
    ).normalized()
    half_width = test_cfg._half_width()
    ref_cfg = ExperimentConfig(
        layout_kind="homogeneous",
        theta1=theta2,
        theta2=theta2,
        L=half_width,
        steps=test_cfg.steps,
        snapshot_times=[],
    )
    test = run(test_cfg)[0]
    reference = run(ref_cfg)[0]
    tc = detect_tc(test.series, reference.series, threshold=threshold)
    t2 = None
    if tc is not None and test.series.t[-1] >= tc + window:
        t2 = detect_second_transition(test.series, tc, window=window)
    report = TransitionReport(
        theta2=theta2,
        L=half_width,
        tc_detected=tc,
        tc_predicted=predicted_tc(theta2, half_width),
        t2_detected=t2,
    )
    return TransitionAnalysis(report, test, reference)
