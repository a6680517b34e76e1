import json
import math
import subprocess
import sys

import numpy as np
import pytest

from mqcrabi.cli import build_parser, main
from mqcrabi.io import load_config, read_csv
from mqcrabi.errors import ConfigError


def run(tmp_path, *args):
    out = tmp_path / "out"
    code = main([*args, "--out", str(out)])
    return code, out


def sidecar(path):
    return json.loads(path.with_name(path.name + ".json").read_text())


def test_scan_outputs(tmp_path):
    code, out = run(tmp_path, "scan", "--n0", "0,0.59,20", "--emit-plot-script")
    assert code == 0
    table = read_csv(out / "scan_peaks.csv")
    assert list(table) == ["n0", "omega_peak_over_g", "omega_asymptote_over_g"]
    assert math.isnan(table["omega_peak_over_g"][0])
    assert table["omega_peak_over_g"][1] == pytest.approx(2.0, abs=0.04)
    assert table["omega_asymptote_over_g"][2] == pytest.approx(9.0554, abs=1e-4)
    zero = read_csv(out / "scan_series" / "n0_0.0000.csv")
    assert np.all(zero["P_e"] == 1.0)
    spec0 = sidecar(out / "scan_series" / "spectrum_n0_0.0000.csv")
    assert spec0["dominant_peak"] is None
    long_map = read_csv(out / "scan_map.csv")
    assert list(long_map) == ["n0", "omega_over_g", "magnitude"]
    meta = sidecar(out / "scan_peaks.csv")
    assert meta["schema_version"] == 1
    assert meta["config"]["omega_gamma"] == 50.0
    assert (out / "plot_scan.py").exists()
    for csv in out.rglob("*.csv"):
        assert csv.with_name(csv.name + ".json").exists()


def test_scan_is_byte_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["scan", "--n0", "0.5,1", "--out", str(a)]) == 0
    assert main(["scan", "--n0", "0.5,1", "--out", str(b)]) == 0
    for f in a.rglob("*.csv"):
        assert f.read_bytes() == (b / f.relative_to(a)).read_bytes()


def test_compare_with_small_ensemble_is_deterministic(tmp_path):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        code = main(["compare", "--trajectories", "3", "--seed", "7", "--duration", "30",
                     "--dt", "0.00125", "--out", str(out)])
        assert code == 0
        outs.append(out)
    for name in ("compare_series.csv", "compare_mqc_wigner.csv", "compare_mqc_focused.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
    series = read_csv(outs[0] / "compare_series.csv")
    assert list(series) == ["gt", "P_e_quantum", "P_e_duffing", "P_e_mqc_focused", "P_e_mqc_wigner"]
    assert series["gt"][-1] == pytest.approx(25.0)
    summary = json.loads((outs[0] / "compare_summary.json").read_text())
    assert summary["schema_version"] == 1
    assert summary["dominant_frequency"]["quantum"] == pytest.approx(2.0, rel=0.01)
    assert summary["duffing_vs_mqc_focused_over_2g"] <= 0.02
    assert sidecar(outs[0] / "compare_summary.json")["config"]["trajectories"] == 3


def test_ground_outputs(tmp_path):
    code, out = run(tmp_path, "ground", "--duration", "30")
    assert code == 0
    s = read_csv(out / "ground_series.csv")
    assert s["P_e_quantum"][0] == 0.0
    k = int(np.argmax(s["P_e_quantum"][: 300]))
    assert s["gt"][k] == pytest.approx(math.pi / 2, abs=0.01)
    assert not (out / "ground_mqc_wigner.csv").exists()
    summary = json.loads((out / "ground_summary.json").read_text())
    assert summary["n0"] == 1.59
    assert summary["duffing_vs_quantum_over_2g"] <= 0.05


def test_offresonant_outputs(tmp_path):
    code, out = run(tmp_path, "offresonant", "--ratios", "0.96,1.0", "--duration", "30", "--t-final", "5")
    assert code == 0
    table = read_csv(out / "offresonant_frequencies.csv")
    d = 0.5 * (0.96 * 50 - 50)
    assert table["quantum_min_P_e"][0] == pytest.approx(1 - 1 / (1 + d * d), abs=1e-10)
    q_map = read_csv(out / "offresonant_quantum_map.csv")
    assert list(q_map) == ["omega_e_over_omega_gamma", "gt", "P_e"]
    assert q_map["gt"].size == 2 * 501


def test_strict_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("omega_gamma = 50\nbogus = 1\n")
    code, _ = run(tmp_path, "scan", "--config", str(cfg))
    assert code == 2
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_config_file_values_are_used(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"omega_e": 40.0, "omega_gamma": 40.0, "seed": 3}))
    code, out = run(tmp_path, "scan", "--config", str(cfg), "--n0", "1")
    assert code == 0
    meta = sidecar(out / "scan_peaks.csv")["config"]
    assert meta["omega_e"] == 40.0 and meta["seed"] == 3


@pytest.mark.parametrize("text", ['{"seed": -1}', '{"trajectories": 1.5}', '{"dt": "x"}', "[1]"])
def test_config_rejects_bad_values(tmp_path, text):
    cfg = tmp_path / "bad.json"
    cfg.write_text(text)
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_domain_error_exit_code(tmp_path):
    code, out = run(tmp_path, "compare", "--omega", "-1")
    assert code == 2
    assert not any(out.glob("*.csv")) if out.exists() else True


def test_unwritable_output_fails_before_computing(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["scan", "--n0", "1", "--out", str(blocker / "sub")]) == 4


def test_divergence_exit_code(tmp_path):
    # a step far beyond the optical period makes RK4 blow up
    code, _ = run(tmp_path, "ground", "--dt", "0.1", "--duration", "200")
    assert code == 3


@pytest.mark.parametrize("command", ["scan", "compare", "offresonant", "ground"])
def test_help_lists_defaults(command, capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args([command, "--help"])
    text = capsys.readouterr().out
    for flag in ("--config", "--out", "--seed", "--dt", "--trajectories", "--emit-plot-script"):
        assert flag in text
    assert "default" in text


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "mqcrabi.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "scan" in proc.stdout
