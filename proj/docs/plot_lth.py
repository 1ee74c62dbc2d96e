#!/usr/bin/env python3
"""Render the trimmed-Hill trajectory overlay and the per-k diagnostics.

Consumes the two CSV files written by `lthill lth-plot`:
  <prefix>_trajectories.csv  (k,b,T_bk)
  <prefix>_diagnostics.csv   (k,emp_var,slope)

Usage: plot_lth.py <prefix> [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    prefix = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else prefix + ".png"

    traj = pd.read_csv(prefix + "_trajectories.csv")
    diag = pd.read_csv(prefix + "_diagnostics.csv")

    fig, axes = plt.subplots(2, 2, figsize=(12, 8))

    ax = axes[0][0]
    for k, group in traj.groupby("k"):
        ax.plot(group["b"], group["T_bk"], lw=0.6, alpha=0.6)
    ax.set_xlabel("b (lower trimming)")
    ax.set_ylabel("T_bk")
    ax.set_title("trimmed-Hill trajectories")

    ax = axes[0][1]
    hill = traj.groupby("k")["T_bk"].last()
    ax.plot(hill.index, hill.values, "k-")
    ax.set_xlabel("k")
    ax.set_ylabel("H_k")
    ax.set_title("Hill plot (b = k endpoints)")

    ax = axes[1][0]
    ax.plot(diag["k"], diag["emp_var"])
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("empirical variance")

    ax = axes[1][1]
    ax.plot(diag["k"], diag["slope"])
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("|slope|")

    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print("wrote", out)


if __name__ == "__main__":
    main()
