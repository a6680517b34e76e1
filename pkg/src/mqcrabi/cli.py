"""Command-line runner: ``mqc-rabi {scan,compare,offresonant,ground}``.

Every command writes CSV data with a JSON sidecar per file into ``--out``.
Exit codes: 0 success, 2 configuration error, 3 numerical divergence,
4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import experiments as ex
from .errors import ConfigError, DomainError, IntegrationDiverged, ScanPointError
from .io import check_writable, load_config, write_csv, write_json, write_sidecar
from .model import ModelParams

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGED, EXIT_IO = 0, 2, 3, 4
MAP_OMEGA_MAX = 12.0


@dataclass
class ExperimentConfig:
    command: str
    omega_e: float = 50.0
    omega_gamma: float = 50.0
    g: float = 1.0
    n0: float | None = None
    trajectories: int = ex.WIGNER_TRAJECTORIES
    seed: int = 0
    dt: float | None = None
    t_final: float = ex.COMPARE_T_FINAL
    duration: float = ex.SCAN_DURATION
    initial_tls: str = "excited"
    sampler: str = "wigner"
    out: str = "out"
    emit_plot_script: bool = False
    workers: int = 1
    extra: dict = field(default_factory=dict)

    @property
    def params(self) -> ModelParams:
        return ModelParams(omega_e=self.omega_e, omega_gamma=self.omega_gamma, g=self.g)


def _float_list(text: str) -> list[float]:
    """``0,0.5,1`` or ``start:stop:step`` (stop inclusive)."""
    if ":" in text:
        start, stop, step = (float(s) for s in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("step must be positive")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return list(np.round(start + step * np.arange(count), 12))
    return [float(s) for s in text.split(",") if s.strip()]


def _ratio_list(text: str) -> list[float]:
    """``0.95,1,1.05`` or ``start:stop:count``."""
    if ":" in text:
        start, stop, count = text.split(":")
        return list(np.linspace(float(start), float(stop), int(count)))
    return [float(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON or key=value file with model/ensemble settings")
    common.add_argument("--out", type=Path, help="output directory (default: ./out)")
    common.add_argument("--seed", type=int, help="unsigned 64-bit ensemble seed (default: 0)")
    common.add_argument("--dt", type=float,
                        help="MQC step in 1/g (default: >= 500 steps per optical period, dividing 0.01)")
    common.add_argument("--trajectories", type=int,
                        help="Wigner ensemble size (default: 100000, the count needed for convergence)")
    common.add_argument("--workers", type=int, help="worker processes for ensembles (default: 1)")
    common.add_argument("--emit-plot-script", action="store_true",
                        help="also write a matplotlib script that plots the CSV output")
    common.add_argument("--duration", type=float,
                        help="span used for Fourier analysis in 1/g (default: 200, long enough to resolve 0.05 g)")
    common.add_argument("--omega", type=float,
                        help="mode frequency Omega_gamma = Omega_e in units of g (default: 50, so the RWA holds)")

    parser = argparse.ArgumentParser(prog="mqc-rabi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="Duffing populations and spectra versus n0")
    p.add_argument("--n0", type=_float_list,
                   help="n0 values, list or start:stop:step (default: 0:3:0.05, the occupancy axis of the scan)")

    p = sub.add_parser("compare", parents=[common],
                       help="quantum vs Duffing vs focused and Wigner MQC, emitter excited")
    p.add_argument("--n0", type=float, help="focused initial occupancy (default: 0.59, best match to 2g)")
    p.add_argument("--t-final", type=float, help="comparison window in 1/g (default: 25)")

    p = sub.add_parser("offresonant", parents=[common], help="detuned emitter, MQC vs exact quantum")
    p.add_argument("--ratios", type=_ratio_list,
                   help="Omega_e/Omega_gamma values, list or start:stop:count (default: 0.9:1.1:21)")
    p.add_argument("--n0", type=float, help="focused initial occupancy (default: 0.59)")
    p.add_argument("--t-final", type=float, help="map window in 1/g (default: 25)")

    p = sub.add_parser("ground", parents=[common],
                       help="emitter starts in its ground state with one extra quantum in the mode")
    p.add_argument("--n0", type=float, help="focused initial occupancy (default: 1.59, zero point plus one quantum)")
    p.add_argument("--t-final", type=float, help="comparison window in 1/g (default: 25)")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Defaults, then the config file, then explicit flags."""
    cfg = ExperimentConfig(command=args.command)
    if args.command == "ground":
        cfg.initial_tls = "ground"
    if args.config is not None:
        values = load_config(args.config)
        for key, value in values.items():
            setattr(cfg, key, value)
        if cfg.initial_tls not in ("excited", "ground"):
            raise ConfigError(f"initial_tls must be 'excited' or 'ground', got {cfg.initial_tls!r}")
    if getattr(args, "omega", None) is not None:
        cfg.omega_e = cfg.omega_gamma = args.omega
    scalars = ("seed", "dt", "trajectories", "workers", "duration", "t_final")
    if args.command != "scan":
        scalars += ("n0",)
    for name in scalars:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if args.out is not None:
        cfg.out = str(args.out)
    cfg.emit_plot_script = args.emit_plot_script
    if args.command == "scan":
        cfg.extra["n0_grid"] = args.n0 if args.n0 is not None else list(ex.default_n0_grid())
    if args.command == "offresonant":
        cfg.extra["ratios"] = args.ratios if args.ratios is not None else list(ex.default_ratio_grid())
    if cfg.trajectories < 0 or cfg.workers < 1:
        raise ConfigError("trajectories must be >= 0 and workers >= 1")
    _ = cfg.params  # raises DomainError on bad model parameters
    return cfg


def _meta(cfg: ExperimentConfig, **more) -> dict:
    d = asdict(cfg)
    d.pop("out")
    return {"config": d, **more}


def _emit(out: Path, name: str, columns: dict, cfg: ExperimentConfig, **meta) -> Path:
    path = write_csv(out / name, columns)
    write_sidecar(path, _meta(cfg, columns=list(columns), **meta))
    return path


def run_scan(cfg: ExperimentConfig, out: Path) -> None:
    res = ex.scan(cfg.extra["n0_grid"], g=cfg.g, duration=cfg.duration)
    series_dir = out / "scan_series"
    series_dir.mkdir(exist_ok=True)
    rows_n0, rows_w, rows_m = [], [], []
    for n0, s, sp in zip(res.n0, res.series, res.spectra):
        _emit(series_dir, f"n0_{n0:.4f}.csv", {"gt": s.t, "P_e": s["P_e"]}, cfg, n0=float(n0))
        keep = sp.omega <= MAP_OMEGA_MAX
        _emit(series_dir, f"spectrum_n0_{n0:.4f}.csv",
              {"omega_over_g": sp.omega[keep], "magnitude": sp.magnitude[keep]}, cfg,
              n0=float(n0), dominant_peak=sp.dominant_peak)
        rows_n0.append(np.full(keep.sum(), n0))
        rows_w.append(sp.omega[keep])
        rows_m.append(sp.magnitude[keep])
    _emit(out, "scan_map.csv", {
        "n0": np.concatenate(rows_n0),
        "omega_over_g": np.concatenate(rows_w),
        "magnitude": np.concatenate(rows_m),
    }, cfg)
    _emit(out, "scan_peaks.csv", {
        "n0": res.n0,
        "omega_peak_over_g": res.peaks,
        "omega_asymptote_over_g": res.asymptote,
    }, cfg)


def _write_compare(cfg: ExperimentConfig, out: Path, res: ex.CompareResult, prefix: str) -> None:
    _emit(out, f"{prefix}_series.csv", {"gt": res.t, **{f"P_e_{k}": v for k, v in res.curves.items()}}, cfg)
    tr = res.trajectory
    _emit(out, f"{prefix}_mqc_focused.csv", {
        "gt": tr.t, "P_e": tr["P_e"], "n": tr["n"], "energy": tr["energy"],
        "re_z": tr["re_z"], "im_z": tr["im_z"],
    }, cfg, dt=tr.meta["dt"])
    if res.ensemble is not None:
        en = res.ensemble
        _emit(out, f"{prefix}_mqc_wigner.csv", {"gt": en.t, "P_e": en["P_e"], "n": en["n"]}, cfg)
    summary = out / f"{prefix}_summary.json"
    write_json(summary, {"schema_version": 1, **res.summary})
    write_sidecar(summary, _meta(cfg))


def run_compare(cfg: ExperimentConfig, out: Path) -> None:
    res = ex.compare(
        cfg.params, initial_tls="excited", n0=cfg.n0, dt=cfg.dt, t_final=cfg.t_final,
        duration=cfg.duration, trajectories=cfg.trajectories, seed=cfg.seed, workers=cfg.workers,
    )
    _write_compare(cfg, out, res, "compare")


def run_ground(cfg: ExperimentConfig, out: Path) -> None:
    res = ex.compare(
        cfg.params, initial_tls="ground", n0=cfg.n0, dt=cfg.dt, t_final=cfg.t_final,
        duration=cfg.duration, trajectories=None,
    )
    _write_compare(cfg, out, res, "ground")


def run_offresonant(cfg: ExperimentConfig, out: Path) -> None:
    res = ex.offresonant(
        cfg.extra["ratios"], omega_gamma=cfg.omega_gamma, g=cfg.g,
        n0=ex.FOCUSED_N0 if cfg.n0 is None else cfg.n0, dt=cfg.dt,
        t_final=cfg.t_final, duration=cfg.duration,
    )
    ratio_col = np.repeat(res.ratios, res.t.size)
    gt_col = np.tile(res.t, res.ratios.size)
    for name, data in (("mqc", res.mqc), ("quantum", res.quantum)):
        _emit(out, f"offresonant_{name}_map.csv", {
            "omega_e_over_omega_gamma": ratio_col, "gt": gt_col, "P_e": data.ravel(),
        }, cfg)
    _emit(out, "offresonant_frequencies.csv", {
        "omega_e_over_omega_gamma": res.ratios,
        "omega_mqc_over_g": res.omega_mqc,
        "omega_quantum_over_g": res.omega_quantum,
        "relative_difference": res.relative_difference,
        "quantum_min_P_e": res.quantum_minimum,
    }, cfg)


PLOT_SCRIPTS = {
    "scan": '''import numpy as np, matplotlib.pyplot as plt
m = np.genfromtxt("scan_map.csv", delimiter=",", names=True)
pk = np.genfromtxt("scan_peaks.csv", delimiter=",", names=True)
plt.tricontourf(m["n0"], m["omega_over_g"], m["magnitude"], levels=50)
plt.plot(pk["n0"], pk["omega_asymptote_over_g"], "k--")
plt.axhline(2.0, color="r", ls="--")
plt.xlabel("n0"); plt.ylabel("omega / g"); plt.savefig("scan.png", dpi=150)
''',
    "compare": '''import numpy as np, matplotlib.pyplot as plt
d = np.genfromtxt("compare_series.csv", delimiter=",", names=True)
for name in d.dtype.names[1:]:
    plt.plot(d["gt"], d[name], label=name)
plt.legend(); plt.xlabel("gt"); plt.ylabel("P_e"); plt.savefig("compare.png", dpi=150)
''',
    "ground": '''import numpy as np, matplotlib.pyplot as plt
d = np.genfromtxt("ground_series.csv", delimiter=",", names=True)
for name in d.dtype.names[1:]:
    plt.plot(d["gt"], d[name], label=name)
plt.legend(); plt.xlabel("gt"); plt.ylabel("P_e"); plt.savefig("ground.png", dpi=150)
''',
    "offresonant": '''import numpy as np, matplotlib.pyplot as plt
fig, axes = plt.subplots(1, 2, sharey=True)
for ax, name in zip(axes, ("mqc", "quantum")):
    d = np.genfromtxt(f"offresonant_{name}_map.csv", delimiter=",", names=True)
    ax.tricontourf(d["gt"], d["omega_e_over_omega_gamma"], d["P_e"], levels=50)
    ax.set_title(name); ax.set_xlabel("gt")
axes[0].set_ylabel("Omega_e / Omega_gamma"); fig.savefig("offresonant.png", dpi=150)
''',
}

COMMANDS = {"scan": run_scan, "compare": run_compare, "ground": run_ground, "offresonant": run_offresonant}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ConfigError, DomainError) as err:
        print(f"mqc-rabi: configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out = check_writable(cfg.out)
    except OSError as err:
        print(f"mqc-rabi: cannot write to {cfg.out}: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        COMMANDS[cfg.command](cfg, out)
        if cfg.emit_plot_script:
            (out / f"plot_{cfg.command}.py").write_text(PLOT_SCRIPTS[cfg.command])
    except (IntegrationDiverged, ScanPointError) as err:
        print(f"mqc-rabi: numerical divergence: {err}", file=sys.stderr)
        return EXIT_DIVERGED
    except (ConfigError, DomainError) as err:
        print(f"mqc-rabi: configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"mqc-rabi: I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
