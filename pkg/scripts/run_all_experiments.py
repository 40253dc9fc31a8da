"""Run every sweep with default parameters and print a short summary.

    python3 scripts/run_all_experiments.py [--out out] [--jobs 4]

Writes one sub-directory per experiment (fig1, traces, steady, kernel), each
with its CSV files and manifest.json.
"""
import argparse
import csv
import dataclasses
from pathlib import Path

import numpy as np

from dqd_discord.sweep import SweepConfig, run

EXPERIMENTS = {
    "fig1": "fig1_grid",
    "traces": "coherence_traces",
    "steady": "steady_state_vs_alpha2",
}


def summarize_fig1(path: Path) -> None:
    with open(path) as fh:
        rows = np.array([[float(v) for v in r] for r in list(csv.reader(fh))[1:]])
    print(f"  {'T [K]':>6}  {'peak D':>9}  {'t_peak [ps]':>11}  {'plateau D':>9}")
    for T in np.unique(rows[:, 1]):
        sel = rows[rows[:, 1] == T]
        i = int(np.argmax(sel[:, 2]))
        print(f"  {T:6g}  {sel[i, 2]:9.4g}  {sel[i, 0]:11.3g}  {sel[-1, 2]:9.4g}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="out")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    base = Path(args.out)
    for name, experiment in EXPERIMENTS.items():
        config = dataclasses.replace(SweepConfig(), experiment=experiment, jobs=args.jobs)
        outputs = run(config, base / name)
        print(f"{name}: " + ", ".join(f"{f} ({n} rows)" for f, n in outputs.items()))
        if name == "fig1":
            summarize_fig1(base / name / "fig1.csv")
    outputs = run(SweepConfig(), base / "kernel", kernel_only=True)
    print("kernel: " + ", ".join(outputs))


if __name__ == "__main__":
    main()
