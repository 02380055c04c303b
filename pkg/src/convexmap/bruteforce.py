"""Independent brute-force re-derivations used to cross-check the main
verification paths.  Deliberately separate algorithms: plain recursive
path enumeration, label-propagation components, quadratic midpoint
scans.  Slow and only meant for small inputs or sampled sweeps."""

from __future__ import annotations

import math

import numpy as np

from .space import EmbeddedSpace


def straight_path_exists_bruteforce(space: EmbeddedSpace, x0: int, x1: int) -> bool:
    """Enumerate every simple path and test straightness from first
    principles (sum of gaps vs endpoint gap).  Exponential; use only on
    tiny spaces."""
    tol = space.tolerances.eta_collinear
    target = space.psi(x1)

    def gap(a, b):
        return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))

    endpoint_gap = gap(space.psi(x0), target)

    def walk(path, length):
        v = path[-1]
        if v == x1:
            return length <= endpoint_gap + tol * max(1.0, length)
        for w in space.neighbors(v):
            if w in path:
                continue
            step = gap(space.psi(v), space.psi(w))
            if walk(path + [w], length + step):
                return True
        return False

    if x0 == x1:
        return True
    return walk([x0], 0.0)


def components_bruteforce(space: EmbeddedSpace, members) -> list[list[int]]:
    """Connected components by iterated min-label propagation (not BFS)."""
    members = sorted(set(members))
    allowed = set(members)
    label = {v: v for v in members}
    changed = True
    while changed:
        changed = False
        for v in members:
            for w in space.neighbors(v):
                if w in allowed and label[w] < label[v]:
                    label[v] = label[w]
                    changed = True
    groups: dict[int, list[int]] = {}
    for v in members:
        root = v
        while label[root] != root:
            root = label[root]
        groups.setdefault(root, []).append(v)
    return [sorted(g) for g in sorted(groups.values(), key=min)]


def fiber_members_bruteforce(space: EmbeddedSpace, level, radius: float) -> list[int]:
    center = np.asarray(level, dtype=float)
    out = []
    for v in space.vertex_ids():
        d = float(np.linalg.norm(np.asarray(space.psi(v)) - center))
        if (radius > 0 and d < radius) or (radius == 0 and
                                           d <= space.tolerances.eps_fiber):
            out.append(v)
    return out


def image_midpoint_scan(space: EmbeddedSpace, delta: float):
    """Quadratic scan over image-point pairs: the first midpoint farther
    than ``delta`` from every image point, or None."""
    points = sorted(set(space.psi(v) for v in space.vertex_ids()))
    arr = np.asarray(points, dtype=float)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            mid = 0.5 * (arr[i] + arr[j])
            nearest = float(np.sqrt(((arr - mid) ** 2).sum(axis=1)).min())
            if nearest > delta:
                return {"midpoint": [float(x) for x in mid],
                        "nearest_image_distance": nearest,
                        "pair": [points[i], points[j]]}
    return None
