import json

from cantorwalk.cli import main

TOML_CONFIG = """
layout_kind = "cantor"
theta1 = "pi/8"
theta2 = "pi/4"
generation = 4
snapshot_times = [20, 40]
"""


def write_toml(tmp_path, text=TOML_CONFIG):
    path = tmp_path / "config.toml"
    path.write_text(text)
    return path


def test_run_with_toml_config(tmp_path):
    cfg = write_toml(tmp_path)
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"series.csv", "series.png", "snapshot_t20.csv", "snapshot_t40.csv"} <= names
    header = (out / "series.csv").read_text().splitlines()[0]
    assert header == "t,sigma,entropy"


def test_run_with_json_config(tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({
        "layout_kind": "homogeneous", "theta1": 0.5, "theta2": 0.5,
        "L": 30, "snapshot_times": [],
    }))
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--out", str(out), "--no-plot"]) == 0
    names = {p.name for p in out.iterdir()}
    assert "series.csv" in names
    assert not any(n.endswith(".png") for n in names)


def test_run_sweep_config_writes_indexed_series(tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({
        "layout_kind": "cantor", "theta1": 0.1, "theta2": "pi/4", "generation": 3,
        "snapshot_times": [], "outputs": ["series"],
        "sweep": {"parameter": "theta1", "values": [0.1, 0.4]},
    }))
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--out", str(out), "--no-plot",
                 "--threads", "2"]) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"series_000.csv", "series_001.csv"}


def test_run_rejects_bad_config_key(tmp_path):
    cfg = write_toml(tmp_path, TOML_CONFIG + 'unknown_key = 3\n')
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1


def test_run_rejects_invalid_values(tmp_path):
    cfg = write_toml(tmp_path, 'layout_kind = "cantor"\ntheta1 = "pi/8"\ntheta2 = "pi/4"\ngeneration = -2\n')
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1


def test_missing_config_file_is_usage_error(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.toml")]) == 1


def test_unknown_extension_rejected(tmp_path):
    cfg = tmp_path / "config.yaml"
    cfg.write_text("layout_kind: cantor")
    assert main(["run", "--config", str(cfg)]) == 1


def test_sweep_command(tmp_path):
    out = tmp_path / "out"
    assert main(["sweep", "--theta2", "pi/4", "--generation", "3", "--grid", "8",
                 "--out", str(out), "--threads", "2", "--no-plot"]) == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "theta1,sigma_over_L,entropy"
    assert len(lines) == 10  # header + 9 grid points (8 steps inclusive)


def test_sweep_renders_figure_by_default(tmp_path):
    out = tmp_path / "out"
    assert main(["sweep", "--generation", "2", "--grid", "4", "--out", str(out)]) == 0
    assert (out / "sweep.png").exists()


def test_tc_command(tmp_path):
    out = tmp_path / "out"
    assert main(["tc", "--theta1", "pi/8", "--theta2", "pi/4", "--generation", "4",
                 "--out", str(out), "--no-plot"]) == 0
    lines = (out / "transition.csv").read_text().splitlines()
    assert lines[0] == "theta2,L,tc_detected,tc_predicted,t2_detected"
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[1] == "40"
    assert (out / "series_test.csv").exists()
    assert (out / "series_reference.csv").exists()


def test_tc_two_scatter_model(tmp_path):
    out = tmp_path / "out"
    assert main(["tc", "--generation", "4", "--model", "two_scatter",
                 "--out", str(out), "--no-plot"]) == 0
    assert (out / "transition.csv").exists()


def test_bad_angle_is_usage_error(tmp_path):
    assert main(["tc", "--theta1", "sideways", "--out", str(tmp_path)]) == 1


def test_steps_beyond_chain_rejected(tmp_path):
    assert main(["tc", "--generation", "3", "--steps", "14",
                 "--out", str(tmp_path), "--no-plot"]) == 1


def test_cli_outputs_are_reproducible(tmp_path):
    cfg = write_toml(tmp_path)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out in (out_a, out_b):
        assert main(["run", "--config", str(cfg), "--out", str(out), "--no-plot"]) == 0
    for name in ("series.csv", "snapshot_t20.csv", "snapshot_t40.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
