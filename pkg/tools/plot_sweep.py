"""Plot a noise-sweep summary.csv produced by `humblescreen experiment`.

Usage: python tools/plot_sweep.py experiment-out/summary.csv [out.png]
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed; pip install matplotlib", file=sys.stderr)
        return 1

    summary = Path(sys.argv[1])
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else summary.with_suffix(".png")
    with summary.open() as fh:
        rows = list(csv.DictReader(fh))
    sigmas = [float(r["sigma"]) for r in rows]
    det = [float(r["mean_rbo_deterministic"]) for r in rows]
    humble = [float(r["mean_rbo_humble"]) for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(sigmas, det, "o-", label="single noisy draw")
    ax.plot(sigmas, humble, "s-", label="expected rank")
    ax.set_xlabel("noise level (sigma)")
    ax.set_ylabel("mean RBO vs ground truth")
    ax.set_ylim(0, 1.02)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
