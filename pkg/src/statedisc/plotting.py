"""Figure output for sweep reports (rendered next to the CSV)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_sweep_figure(spectral: Sequence[float], ceiling: Sequence[float],
                      pgm: Sequence[float], fixed_point: Sequence[float],
                      path) -> None:
    """Two panels: solver success against the spectral bound, and the gap histogram."""
    spectral = np.asarray(spectral, dtype=float)
    ceiling = np.asarray(ceiling, dtype=float)
    pgm = np.asarray(pgm, dtype=float)
    fixed_point = np.asarray(fixed_point, dtype=float)
    gap = spectral - fixed_point

    fig, (left, right) = plt.subplots(1, 2, figsize=(9.0, 4.0))

    lo = float(min(spectral.min(), fixed_point.min(), pgm.min()))
    hi = float(max(spectral.max(), np.minimum(ceiling, 1.0).max(), 1.0))
    pad = 0.02 * (hi - lo + 1e-12)
    line = np.array([lo - pad, hi + pad])
    left.plot(line, line, color="0.6", lw=1.0, label="success = bound")
    left.scatter(spectral, pgm, s=12, alpha=0.6, label="pretty-good")
    left.scatter(spectral, fixed_point, s=12, alpha=0.6, label="fixed-point")
    left.set_xlabel("spectral bound")
    left.set_ylabel("achieved success")
    left.set_title("solver success vs. bound")
    left.legend(loc="upper left", fontsize=8)

    right.hist(gap, bins=min(40, max(5, gap.size // 5)), color="tab:blue", alpha=0.8)
    right.set_xlabel("spectral bound - fixed-point success")
    right.set_ylabel("instances")
    right.set_title("bound gap")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
