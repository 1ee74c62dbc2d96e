#!/usr/bin/env python3
"""Plot the standardized ratio trajectory against its [0, 1] acceptance band.

Consumes <prefix>_bands.csv from `lthill ratio-test` (columns b,R,q1,q2,std).

Usage: plot_ratio.py <prefix> [out.png]
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

    bands = pd.read_csv(prefix + "_bands.csv")

    fig, ax = plt.subplots(figsize=(9, 4))
    ax.axhspan(0.0, 1.0, color="0.9")
    ax.axhline(0.0, color="0.5", lw=0.8)
    ax.axhline(1.0, color="0.5", lw=0.8)
    ax.plot(bands["b"], bands["std"], "b-", lw=0.9)
    outside = bands[(bands["std"] < 0) | (bands["std"] > 1)]
    if not outside.empty:
        ax.plot(outside["b"], outside["std"], "r.", ms=4)
    ax.set_xlabel("b")
    ax.set_ylabel("standardized ratio")
    ax.set_title("ratio statistics, standardized to the calibrated bands")

    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print("wrote", out)


if __name__ == "__main__":
    main()
