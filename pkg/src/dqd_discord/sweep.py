"""Parameter sweeps reproducing the time/temperature and occupation scans.

Every run writes CSV files with a single header row and values formatted to
12 significant digits, then a ``manifest.json``.  Row order is fixed, so the
same configuration gives byte-identical CSVs.
"""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .correlations import discord_report, rescaled_bounds
from .dynamics import (TwoQubitState, initial_x_from_alpha, normalized_coherences,
                       propagate, pure_product_state, x_state)
from .errors import ConfigError
from .phonon_spectral import (BathSpec, MaterialParams, SpectralGrid, compute_kernel,
                              spectral_weights, steady_state_kernel)

EXPERIMENTS = ("fig1_grid", "coherence_traces", "steady_state_vs_alpha2", "single_state")
DEFAULT_TEMPERATURES = (0.0, 10.0, 25.0, 50.0, 100.0, 150.0, 200.0, 300.0)


@dataclass
class SweepConfig:
    material: MaterialParams = field(default_factory=MaterialParams)
    grid: SpectralGrid = field(default_factory=SpectralGrid)
    distance_nm: float = 6.0
    experiment: str = "fig1_grid"
    t_max_ps: float = 10.0
    n_times: int = 200
    t_min_ps: float = 0.01
    time_spacing: str = "log"
    temperatures_K: list = field(default_factory=lambda: list(DEFAULT_TEMPERATURES))
    alpha2_values: list = field(default_factory=lambda: [round(0.025 * i, 10) for i in range(41)])
    steady_state_mode: str = "analytic"
    output_dir: str = "out"
    jobs: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if not self.t_max_ps > 0:
            raise ConfigError("t_max_ps must be positive")
        if self.n_times < 2:
            raise ConfigError("n_times must be at least 2")
        if self.time_spacing not in ("log", "linear"):
            raise ConfigError("time_spacing must be 'log' or 'linear'")
        if self.time_spacing == "log" and not 0 < self.t_min_ps < self.t_max_ps:
            raise ConfigError("log spacing needs 0 < t_min_ps < t_max_ps")
        if not self.temperatures_K:
            raise ConfigError("temperatures_K must not be empty")
        if any(not (T >= 0 and math.isfinite(T)) for T in self.temperatures_K):
            raise ConfigError("temperatures must be finite and >= 0")
        if any(not 0 <= a <= 1 for a in self.alpha2_values):
            raise ConfigError("alpha2 values must lie in [0, 1]")
        if not self.distance_nm >= 0:
            raise ConfigError("distance_nm must be >= 0")
        if self.steady_state_mode not in ("analytic", "finite"):
            raise ConfigError("steady_state_mode must be 'analytic' or 'finite'")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def times(self) -> np.ndarray:
        if self.time_spacing == "linear":
            return np.linspace(0.0, self.t_max_ps, self.n_times + 1)
        logs = np.logspace(math.log10(self.t_min_ps), math.log10(self.t_max_ps), self.n_times)
        return np.concatenate([[0.0], logs])

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        data = dict(data)
        _reject_unknown(data, cls, "config")
        try:
            if "material" in data:
                _reject_unknown(data["material"], MaterialParams, "material")
                data["material"] = MaterialParams(**data["material"])
            if "grid" in data:
                _reject_unknown(data["grid"], SpectralGrid, "grid")
                data["grid"] = SpectralGrid(**data["grid"])
            return cls(**data)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> "SweepConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(data)


def _reject_unknown(data, cls, where: str) -> None:
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be an object")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {', '.join(unknown)}")


def fmt(value: float) -> str:
    return f"{float(value):.12g}"


def _temperature_tag(T: float) -> str:
    return f"{T:g}".replace(".", "p")


def write_csv(path: Path, header, rows) -> int:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        n = 0
        for row in rows:
            writer.writerow([fmt(v) for v in row])
            n += 1
    return n


def equal_superposition() -> TwoQubitState:
    s = 1.0 / math.sqrt(2.0)
    return pure_product_state(s, s)


def _fig1_rows_for_temperature(args):
    config, T = args
    times = config.times()
    weights = spectral_weights(config.distance_nm, config.material, config.grid)
    kernel = compute_kernel(times, BathSpec(T), config.distance_nm, config.material,
                            config.grid, weights)
    rho0 = equal_superposition()
    rows = []
    for n, t in enumerate(times):
        lo, hi = rescaled_bounds(propagate(rho0, kernel, n))
        rows.append((t, T, lo, hi))
    return rows


def _map(fn, items, jobs: int):
    if jobs == 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_fig1_grid(config: SweepConfig, out_dir=None) -> dict:
    """Rescaled discord bounds of the equal superposition over the (t, T) grid."""
    out_dir = _prepare(out_dir or config.output_dir)
    blocks = _map(_fig1_rows_for_temperature, [(config, T) for T in config.temperatures_K],
                  config.jobs)
    path = out_dir / "fig1.csv"
    n = write_csv(path, ["t_ps", "T_K", "discord_lower", "discord_upper"],
                  (row for block in blocks for row in block))
    return {path.name: n}


def coherence_trace_rows(config: SweepConfig, T: float, weights=None):
    times = config.times()
    kernel = compute_kernel(times, BathSpec(T), config.distance_nm, config.material,
                            config.grid, weights)
    pure0 = equal_superposition()
    x0 = x_state(0.25, 0.25, 0.25, 0.25, 0.25)
    rows = []
    for n, t in enumerate(times):
        coh = normalized_coherences(pure0, kernel, n, pairs=((0, 1), (0, 3), (1, 2)))
        lo, hi = rescaled_bounds(propagate(pure0, kernel, n))
        x_lo, _ = rescaled_bounds(propagate(x0, kernel, n))
        rows.append((t, coh[(0, 1)], coh[(0, 3)], coh[(1, 2)], lo, hi, x_lo))
    return rows


def run_coherence_traces(config: SweepConfig, out_dir=None) -> dict:
    out_dir = _prepare(out_dir or config.output_dir)
    weights = spectral_weights(config.distance_nm, config.material, config.grid)
    written = {}
    for T in config.temperatures_K:
        path = out_dir / f"traces_T{_temperature_tag(T)}.csv"
        written[path.name] = write_csv(
            path, ["t_ps", "n01", "n03", "n12", "discord_pure_lo", "discord_pure_hi", "discord_x"],
            coherence_trace_rows(config, T, weights))
    return written


def steady_state_rows(config: SweepConfig, weights=None):
    if weights is None:
        weights = spectral_weights(config.distance_nm, config.material, config.grid)
    rows = []
    for T in config.temperatures_K:
        bath = BathSpec(T)
        if config.steady_state_mode == "analytic":
            kernel = steady_state_kernel(bath, config.distance_nm, config.material, config.grid,
                                         weights)
        else:
            kernel = compute_kernel([config.t_max_ps], bath, config.distance_nm, config.material,
                                    config.grid, weights)
        for a2 in config.alpha2_values:
            pure0 = pure_product_state(math.sqrt(a2), math.sqrt(1.0 - a2))
            p_lo, p_hi = rescaled_bounds(propagate(pure0, kernel, 0))
            x_lo, x_hi = rescaled_bounds(propagate(initial_x_from_alpha(a2), kernel, 0))
            rows.append((a2, T, p_lo, p_hi, x_lo, x_hi))
    return rows


def run_steady_state(config: SweepConfig, out_dir=None) -> dict:
    out_dir = _prepare(out_dir or config.output_dir)
    path = out_dir / "steady.csv"
    n = write_csv(path, ["alpha2", "T_K", "pure_lo", "pure_hi", "x_lo", "x_hi"],
                  steady_state_rows(config))
    return {path.name: n}


def run_single_state(config: SweepConfig, state_file, out_dir=None) -> dict:
    """Evolve a state loaded from JSON and report discord measures at every time and temperature."""
    state = TwoQubitState.load(state_file)
    out_dir = _prepare(out_dir or config.output_dir)
    times = config.times()
    weights = spectral_weights(config.distance_nm, config.material, config.grid)
    records = []
    for T in config.temperatures_K:
        kernel = compute_kernel(times, BathSpec(T), config.distance_nm, config.material,
                                config.grid, weights)
        for n, t in enumerate(times):
            rep = discord_report(propagate(state, kernel, n))
            records.append({"t_ps": float(t), "T_K": float(T), **rep.to_dict()})
    path = out_dir / "state_reports.json"
    _atomic_write(path, json.dumps(records, indent=1) + "\n")
    return {path.name: len(records)}


def run_kernel_tables(config: SweepConfig, out_dir=None) -> dict:
    out_dir = _prepare(out_dir or config.output_dir)
    times = config.times()
    weights = spectral_weights(config.distance_nm, config.material, config.grid)
    written = {}
    for T in config.temperatures_K:
        kernel = compute_kernel(times, BathSpec(T), config.distance_nm, config.material,
                                config.grid, weights)
        path = out_dir / f"kernel_T{_temperature_tag(T)}.csv"
        kernel.to_csv(path)
        written[path.name] = len(times)
    return written


def grid_convergence(config: SweepConfig) -> float:
    """Largest relative change of the kernel at the hottest temperature when the grid is doubled."""
    times = config.times()
    T = max(config.temperatures_K)
    coarse = compute_kernel(times, BathSpec(T), config.distance_nm, config.material, config.grid)
    fine = compute_kernel(times, BathSpec(T), config.distance_nm, config.material,
                          config.grid.refined())
    worst = 0.0
    for name in ("a01", "a03", "b01", "b03"):
        a, b = getattr(coarse, name), getattr(fine, name)
        scale = np.max(np.abs(b))
        if scale > 0:
            worst = max(worst, float(np.max(np.abs(a - b)) / scale))
    return worst


def _prepare(out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not os.access(out_dir, os.W_OK):
        raise PermissionError(f"output directory {out_dir} is not writable")
    return out_dir


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_manifest(config: SweepConfig, out_dir, outputs: dict, wall_time: float,
                   convergence: float | None) -> Path:
    manifest = {
        "config": config.to_dict(),
        "code_version": __version__,
        "grid_convergence_rel_change": convergence,
        "wall_time_s": wall_time,
        "outputs": [{"file": name, "rows": rows} for name, rows in outputs.items()],
    }
    path = Path(out_dir) / "manifest.json"
    _atomic_write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


RUNNERS = {
    "fig1_grid": run_fig1_grid,
    "coherence_traces": run_coherence_traces,
    "steady_state_vs_alpha2": run_steady_state,
}


def run(config: SweepConfig, out_dir=None, state_file=None, kernel_only: bool = False,
        check_convergence: bool = True) -> dict:
    """Run one experiment and write its manifest; returns the {file: row_count} map."""
    start = time.perf_counter()
    out_dir = _prepare(out_dir or config.output_dir)
    if kernel_only:
        outputs = run_kernel_tables(config, out_dir)
    elif config.experiment == "single_state":
        if state_file is None:
            raise ConfigError("single_state experiment needs a state file")
        outputs = run_single_state(config, state_file, out_dir)
    else:
        outputs = RUNNERS[config.experiment](config, out_dir)
    convergence = grid_convergence(config) if check_convergence else None
    write_manifest(config, out_dir, outputs, time.perf_counter() - start, convergence)
    return outputs
