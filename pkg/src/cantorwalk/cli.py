"""Command-line interface.

Three subcommands, each writing CSV reports (and companion PNG figures
unless ``--no-plot``) into the ``--out`` directory:

- ``run``: execute a TOML or JSON experiment config.
- ``sweep``: end-of-run observables over a uniform theta1 grid.
- ``tc``: transition analysis against a single-angle reference run.

Exit codes: 0 on success, 1 for bad arguments or configs, 2 when a
numerical invariant is violated at runtime.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from .errors import NumericalInvariantError, ValidationError
from .experiments import (
    ExperimentConfig,
    SweepSpec,
    angle_sweep_at_L,
    parse_angle,
    run as run_experiment,
    theta1_grid,
    transition_analysis,
)
from .reporting import (
    write_series_csv,
    write_snapshot_csv,
    write_sweep_csv,
    write_transition_csv,
)

__all__ = ["cli", "main"]


class AngleType(click.ParamType):
    """Accepts radians or 'pi' fractions such as pi/4 and 2pi/5."""

    name = "angle"

    def convert(self, value, param, ctx):
        try:
            return parse_angle(value)
        except ValidationError as exc:
            self.fail(str(exc), param, ctx)


ANGLE = AngleType()


def _load_config(path: Path) -> ExperimentConfig:
    if path.suffix.lower() == ".json":
        with open(path, "rb") as fh:
            data = json.load(fh)
    elif path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    else:
        raise ValidationError(f"config must be a .toml or .json file, got {path.name!r}")
    if not isinstance(data, dict):
        raise ValidationError("config root must be a table/object")
    return ExperimentConfig.from_dict(data)


def _out_dir(out: str) -> Path:
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


@click.group()
def cli():
    """Discrete-time quantum walks with fractal coin sequences."""


@cli.command("run")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="TOML or JSON experiment description.")
@click.option("--out", default=".", show_default=True, help="Output directory.")
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1),
              help="Worker threads for sweeps.")
@click.option("--plot/--no-plot", default=True, show_default=True,
              help="Also render PNG figures.")
def run_cmd(config_path: Path, out: str, threads: int, plot: bool):
    """Execute an experiment config and write its reports."""
    cfg = _load_config(config_path).normalized()
    results = run_experiment(cfg, threads=threads)
    out_path = _out_dir(out)
    multi = len(results) > 1
    for idx, res in enumerate(results):
        tag = f"_{idx:03d}" if multi else ""
        if "series" in cfg.outputs:
            write_series_csv(out_path / f"series{tag}.csv", res.series)
            if plot:
                from .plotting import save_series_figure

                save_series_figure(out_path / f"series{tag}.png", res.series)
        if "snapshots" in cfg.outputs:
            for t, p in sorted(res.series.snapshots.items()):
                write_snapshot_csv(out_path / f"snapshot{tag}_t{t}.csv", p)
                if plot:
                    from .plotting import save_snapshot_figure

                    save_snapshot_figure(out_path / f"snapshot{tag}_t{t}.png", p, t)
    click.echo(f"wrote {len(results)} run(s) to {out_path}")


@cli.command("sweep")
@click.option("--theta2", default=math.pi / 4, show_default="pi/4", type=ANGLE,
              help="Fixed bulk angle.")
@click.option("--generation", default=7, show_default=True, type=click.IntRange(min=1),
              help="Fractal generation (chain has 3**g sites).")
@click.option("--grid", default=64, show_default=True, type=click.IntRange(min=1),
              help="Number of uniform steps covering [0, pi/2].")
@click.option("--out", default=".", show_default=True, help="Output directory.")
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--plot/--no-plot", default=True, show_default=True)
def sweep_cmd(theta2: float, generation: int, grid: int, out: str, threads: int, plot: bool):
    """Sweep theta1 over [0, pi/2]; record end-of-run spread and entropy."""
    values = theta1_grid(grid)
    # only the end-of-run row matters, so record a single sample per run
    cfg = ExperimentConfig(
        layout_kind="cantor",
        theta1=float(values[0]),
        theta2=theta2,
        generation=generation,
        record_every=max((3**generation - 1) // 2, 1),
        snapshot_times=[],
        sweep=SweepSpec("theta1", [float(v) for v in values]),
    )
    rows = angle_sweep_at_L(cfg, threads=threads)
    out_path = _out_dir(out)
    write_sweep_csv(out_path / "sweep.csv", rows)
    if plot:
        from .plotting import save_sweep_figure

        save_sweep_figure(out_path / "sweep.png", rows)
    click.echo(f"wrote {len(rows)} sweep rows to {out_path}")


@cli.command("tc")
@click.option("--theta1", default=math.pi / 8, show_default="pi/8", type=ANGLE,
              help="Scatterer angle.")
@click.option("--theta2", default=math.pi / 4, show_default="pi/4", type=ANGLE,
              help="Bulk angle.")
@click.option("--generation", default=7, show_default=True, type=click.IntRange(min=1))
@click.option("--model", default="cantor", show_default=True,
              type=click.Choice(["cantor", "two_scatter"]),
              help="Inhomogeneous layout to test.")
@click.option("--steps", default=None, type=click.IntRange(min=1),
              help="Steps to evolve (default: L).")
@click.option("--threshold", default=1e-4, show_default=True, type=float,
              help="Relative spread deviation marking the transition.")
@click.option("--window", default=50, show_default=True, type=click.IntRange(min=1),
              help="Rolling window for the entropy-fluctuation detector.")
@click.option("--out", default=".", show_default=True, help="Output directory.")
@click.option("--plot/--no-plot", default=True, show_default=True)
def tc_cmd(theta1: float, theta2: float, generation: int, model: str,
           steps: int | None, threshold: float, window: int, out: str, plot: bool):
    """Locate the dynamical transition against a single-angle reference."""
    analysis = transition_analysis(
        generation, theta1, theta2,
        layout_kind=model, steps=steps, threshold=threshold, window=window,
    )
    out_path = _out_dir(out)
    write_transition_csv(out_path / "transition.csv", [analysis.report])
    write_series_csv(out_path / "series_test.csv", analysis.test.series)
    write_series_csv(out_path / "series_reference.csv", analysis.reference.series)
    if plot:
        from .plotting import save_transition_figure

        save_transition_figure(out_path / "transition.png", analysis)
    rep = analysis.report
    detected = "none" if rep.tc_detected is None else str(rep.tc_detected)
    click.echo(
        f"t_c detected = {detected}, predicted = {rep.tc_predicted:.1f} (L = {rep.L})"
    )


def main(argv=None) -> int:
    """Entry point mapping errors onto stable exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except (ValidationError, click.ClickException, click.Abort) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except NumericalInvariantError as exc:
        click.echo(f"numerical invariant violated: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
