"""Discrete-time quantum walks on chains with fractal coin sequences.

The walker moves on sites x in [-L, L] and carries a two-state coin.
Each step applies a site-dependent real coin rotation followed by the
usual conditional shift.  The rotation angle at each site is chosen by
a two-letter substitution sequence whose type-1 letters occupy a Cantor
set in the infinite-generation limit, so a single chain interpolates
between a homogeneous walk (generation 0) and a fractal arrangement of
scatterers.

Typical use::

    from cantorwalk import ExperimentConfig, run

    cfg = ExperimentConfig(layout_kind="cantor", theta1=0.3927,
                           theta2=0.7854, generation=7)
    result, = run(cfg)
    result.series.sigma[-1]

Plotting helpers live in :mod:`cantorwalk.plotting` and are imported
lazily so that headless array work never touches matplotlib.
"""

from .errors import NumericalInvariantError, ValidationError
from .evolution import WalkerState, coin_matrix, evolve, initial_state, step, step_adjoint
from .experiments import (
    ExperimentConfig,
    RunResult,
    SweepRow,
    SweepSpec,
    TransitionAnalysis,
    TransitionReport,
    angle_sweep_at_L,
    detect_second_transition,
    detect_tc,
    parse_angle,
    predicted_tc,
    run,
    theta1_grid,
    transition_analysis,
)
from .layouts import (
    DEFAULT_THETA1,
    DEFAULT_THETA2,
    CoinLabel,
    CoinLayout,
    build_cantor,
    build_homogeneous,
    build_two_scatter,
    cantor_labels,
    nearest_type1_offset,
    verify_self_similarity,
)
from .observables import (
    ObservableSeries,
    SeriesRecorder,
    SpinReducedState,
    entanglement_entropy,
    entropy_oracle,
    moment,
    probability_distribution,
    spin_reduced,
    std_dev,
)
from .reporting import (
    write_series_csv,
    write_snapshot_csv,
    write_sweep_csv,
    write_transition_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CoinLabel",
    "CoinLayout",
    "DEFAULT_THETA1",
    "DEFAULT_THETA2",
    "ExperimentConfig",
    "NumericalInvariantError",
    "ObservableSeries",
    "RunResult",
    "SeriesRecorder",
    "SpinReducedState",
    "SweepRow",
    "SweepSpec",
    "TransitionAnalysis",
    "TransitionReport",
    "ValidationError",
    "WalkerState",
    "angle_sweep_at_L",
    "build_cantor",
    "build_homogeneous",
    "build_two_scatter",
    "cantor_labels",
    "coin_matrix",
    "detect_second_transition",
    "detect_tc",
    "entanglement_entropy",
    "entropy_oracle",
    "evolve",
    "initial_state",
    "moment",
    "nearest_type1_offset",
    "parse_angle",
    "predicted_tc",
    "probability_distribution",
    "run",
    "spin_reduced",
    "std_dev",
    "step",
    "step_adjoint",
    "theta1_grid",
    "transition_analysis",
    "verify_self_similarity",
    "write_series_csv",
    "write_snapshot_csv",
    "write_sweep_csv",
    "write_transition_csv",
]
