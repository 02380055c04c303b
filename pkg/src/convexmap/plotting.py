"""Figure rendering for the report path: image scatter with hull
boundary, and level-set components colored per component.  Files only
(Agg backend); one figure per call, alongside the delimited tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .space import EmbeddedSpace  # noqa: E402


def _image_array(space: EmbeddedSpace) -> np.ndarray:
    return np.asarray([space.psi(v) for v in space.vertex_ids()], dtype=float)


def save_image_figure(space: EmbeddedSpace, path, hull=None,
                      highlight=None) -> None:
    """Scatter of the vertex values; 1-d images are drawn against vertex
    index, higher dimensions project to the first two coordinates.
    ``hull`` (half-space form) adds facet lines in 2-d; ``highlight`` is
    a vertex-id sequence drawn as a polyline."""
    arr = _image_array(space)
    fig, ax = plt.subplots(figsize=(6, 5))
    if space.dimension == 1:
        ax.plot(np.arange(len(arr)), arr[:, 0], ".", ms=3, color="tab:blue")
        ax.set_xlabel("vertex index")
        ax.set_ylabel("value")
    else:
        ax.plot(arr[:, 0], arr[:, 1], ".", ms=3, color="tab:blue")
        ax.set_xlabel("value[0]")
        ax.set_ylabel("value[1]")
        ax.set_aspect("equal", adjustable="datalim")
        if hull is not None and space.dimension == 2:
            lo = arr.min(axis=0) - 0.05 * (np.ptp(arr, axis=0) + 1e-9)
            hi = arr.max(axis=0) + 0.05 * (np.ptp(arr, axis=0) + 1e-9)
            for normal, offset in zip(hull.normals, hull.offsets):
                a, b = normal
                if abs(b) > abs(a):
                    xs = np.linspace(lo[0], hi[0], 2)
                    ys = (offset - a * xs) / b
                else:
                    ys = np.linspace(lo[1], hi[1], 2)
                    xs = (offset - b * ys) / a
                ax.plot(xs, ys, "-", lw=0.6, color="tab:gray", alpha=0.6)
    if highlight:
        ids = list(space.vertex_ids())
        pos = {v: k for k, v in enumerate(ids)}
        seq = np.asarray([arr[pos[v]] for v in highlight])
        if space.dimension == 1:
            ax.plot([pos[v] for v in highlight], seq[:, 0], "-o",
                    ms=4, lw=1.2, color="tab:red")
        else:
            ax.plot(seq[:, 0], seq[:, 1], "-o", ms=4, lw=1.2, color="tab:red")
    ax.set_title(space.name or "image")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_fiber_figure(space: EmbeddedSpace, labeled_levels, path) -> None:
    """``labeled_levels``: list of (level, components) where components
    is a list of vertex-id lists.  Components are colored cyclically;
    multi-component levels are the interesting ones."""
    arr = _image_array(space)
    ids = list(space.vertex_ids())
    pos = {v: k for k, v in enumerate(ids)}
    fig, ax = plt.subplots(figsize=(6, 5))
    if space.dimension == 1:
        ax.plot(np.arange(len(arr)), arr[:, 0], ".", ms=2,
                color="0.8", zorder=1)
    else:
        ax.plot(arr[:, 0], arr[:, 1], ".", ms=2, color="0.8", zorder=1)
        ax.set_aspect("equal", adjustable="datalim")
    cmap = plt.get_cmap("tab10")
    for level, comps in labeled_levels:
        for ci, comp in enumerate(comps):
            pts = np.asarray([arr[pos[v]] for v in comp])
            color = cmap(ci % 10)
            marker = "o" if len(comps) == 1 else "s"
            if space.dimension == 1:
                ax.plot([pos[v] for v in comp], pts[:, 0], marker, ms=4,
                        color=color, zorder=2)
            else:
                ax.plot(pts[:, 0], pts[:, 1], marker, ms=4, color=color,
                        zorder=2)
    ax.set_title(f"{space.name or 'space'}: level components")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
