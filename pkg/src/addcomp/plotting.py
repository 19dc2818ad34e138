"""Diagnostic figure for criterion sweeps."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# fixed ids and no timestamp, so identical rows give identical files
RC = {
    "svg.hashsalt": "addcomp",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "figure.figsize": (6.0, 3.8),
}
METADATA = {
    "svg": {"Date": None, "Creator": None},
    "png": {"Software": None},
    "pdf": {"CreationDate": None, "ModDate": None, "Creator": None, "Producer": None},
}


def plot_criterion(reports, path, fmt: str = "svg", ladder_points=()) -> None:
    """R(x) and A(x)B(x)/x against x (log scale); ladder points are marked."""
    reports = [r for r in reports if r.R is not None]
    xs = [float(r.x) for r in reports]
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(xs, [float(r.R) for r in reports], "o-", lw=1.2, ms=3, label="R(x)")
        ax.plot(xs, [float(r.exactness_ratio) for r in reports], "s--", lw=1.0, ms=3,
                label="A(x)B(x)/x")
        ax.axhline(1.0, color="0.6", lw=0.8, zorder=0)
        for i, p in enumerate(ladder_points):
            ax.axvline(float(p), color="C3", lw=0.6, ls=":",
                       label="ladder points" if i == 0 else None)
        ax.set_xscale("log")
        ax.set_xlabel("x")
        ax.set_ylabel("value")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, format=fmt, metadata=METADATA.get(fmt))
        plt.close(fig)
