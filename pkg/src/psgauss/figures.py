"""Optional figure rendering for verification reports.

matplotlib is imported lazily so the plain verify path never touches it.
Figures land next to the JSON report, named <base>_<field>.png.
"""

from __future__ import annotations

import numpy as np

__all__ = ["render_entry_figures"]

_FIELDS = ("K", "S", "hsq_sphere", "Hhat_norm")


def _load_pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_entry_figures(base, entry, pts, reports, report):
    """Heatmaps of scalar invariants over a 2-parameter grid.

    Surfaces with n != 2 get a single per-point line plot instead.
    Returns the list of files written.
    """
    plt = _load_pyplot()
    imm = entry.immersion
    counts = report["grid"]
    values = {
        "K": np.array([r.K for r in reports]),
        "S": np.array([r.S for r in reports]),
        "hsq_sphere": np.array([r.hsq_sphere for r in reports]),
        "Hhat_norm": np.array([float(np.linalg.norm(r.Hhat)) for r in reports]),
    }
    written = []
    if imm.n == 2:
        u0 = np.array([p[0] for p in pts]).reshape(counts)
        u1 = np.array([p[1] for p in pts]).reshape(counts)
        for field in _FIELDS:
            grid = values[field].reshape(counts)
            fig, ax = plt.subplots(figsize=(4.2, 3.4))
            mesh = ax.pcolormesh(u0, u1, grid, shading="nearest")
            fig.colorbar(mesh, ax=ax)
            ax.set_xlabel("u0")
            ax.set_ylabel("u1")
            ax.set_title(f"{entry.name}: {field}")
            path = f"{base}_{field}.png"
            fig.savefig(path, dpi=110, bbox_inches="tight")
            plt.close(fig)
            written.append(path)
    else:
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        idx = np.arange(len(pts))
        for field in _FIELDS:
            ax.plot(idx, values[field], label=field, lw=1.0)
        ax.set_xlabel("grid point")
        ax.legend(fontsize=8)
        ax.set_title(entry.name)
        path = f"{base}_invariants.png"
        fig.savefig(path, dpi=110, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    residuals = [c for c in report["checks"] if isinstance(c["measured"], float)]
    if residuals:
        fig, ax = plt.subplots(figsize=(5.2, 3.2))
        names = [c["name"] for c in residuals]
        vals = [max(abs(c["measured"]), 1e-18) for c in residuals]
        ax.barh(names, vals)
        ax.set_xscale("log")
        ax.set_xlabel("measured residual")
        ax.set_title(f"{entry.name}: check residuals")
        path = f"{base}_residuals.png"
        fig.savefig(path, dpi=110, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
