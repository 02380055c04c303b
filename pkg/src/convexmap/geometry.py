"""Euclidean primitives: polygonal lengths, straightness predicates, convex hulls.

Vectors are plain tuples of floats.  All predicates take an explicit
:class:`Tolerances` so the comparison policy is visible at every call site.
Everything here is a pure function of immutable inputs and safe to call
from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

Vector = tuple[float, ...]

# floating-point allowance on top of user tolerances where "exact up to
# representation" is promised (hull membership of hull input points)
_FLOAT_SLACK = 1e-12


class DimensionMismatchError(ValueError):
    """Raised when vectors of different dimensions meet in one computation."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical comparison policy.

    eta_collinear : slack for triangle-equality / straightness tests,
        scaled by max(1, natural length scale) where one exists.
    eta_hull      : absolute slack for half-space membership.
    eps_fiber     : binning radius for "exact" level sets.  0 means the
        owning space should substitute its own default (half the minimum
        nonzero edge length).
    eta_zero      : treat-as-zero threshold for open/closed ball edges.
    """

    eta_collinear: float = 1e-9
    eta_hull: float = 1e-9
    eps_fiber: float = 0.0
    eta_zero: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("eta_collinear", "eta_hull", "eps_fiber", "eta_zero"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")

    def with_eps_fiber(self, eps_fiber: float) -> "Tolerances":
        return replace(self, eps_fiber=eps_fiber)


DEFAULT_TOLERANCES = Tolerances()


def as_vector(coords) -> Vector:
    """Validate and normalize one point to a tuple of finite floats."""
    vec = tuple(float(c) for c in coords)
    if not vec:
        raise ValueError("vectors must have dimension >= 1")
    if not all(math.isfinite(c) for c in vec):
        raise ValueError(f"non-finite coordinate in {vec}")
    # +0.0 folds -0.0 onto 0.0 so equal points compare equal as tuples
    return tuple(c + 0.0 for c in vec)


def check_same_dimension(points) -> int:
    dims = {len(p) for p in points}
    if len(dims) > 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def norm(v: Vector) -> float:
    return math.sqrt(math.fsum(c * c for c in v))


def sub(a: Vector, b: Vector) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dimension {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def distance(a: Vector, b: Vector) -> float:
    return norm(sub(a, b))


def path_length(points) -> float:
    """Length of the polygonal curve through ``points``.

    For polygonal data the supremum over partitions is just the sum of
    consecutive Euclidean gaps; a single point has length 0.
    """
    pts = list(points)
    if not pts:
        raise ValueError("path must contain at least one point")
    check_same_dimension(pts)
    return math.fsum(distance(a, b) for a, b in zip(pts, pts[1:]))


def is_monotone_straight(points, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff the polygonal curve is constant or traverses the segment
    between its endpoints with a weakly monotone parametrization.

    Characterized by length == endpoint gap, relaxed to
    ``length <= gap + eta_collinear * max(1, length)``.
    """
    pts = list(points)
    length = path_length(pts)
    gap = distance(pts[0], pts[-1]) if len(pts) > 1 else 0.0
    return length <= gap + tol.eta_collinear * max(1.0, length)


def straight_length_bound(gap: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest polygonal length a monotone-straight curve with endpoint
    distance ``gap`` can have under ``tol``.

    Any curve longer than this provably fails :func:`is_monotone_straight`,
    which turns a shortest-path distance into a certificate of absence.
    """
    eta = tol.eta_collinear
    return max(gap + eta, gap / (1.0 - eta) if eta < 1.0 else math.inf)


def are_collinear_midpoint(a: Vector, b: Vector, c: Vector,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff b sits at the Euclidean midpoint of [a, c] in the
    triangle-equality sense: |a-b| = |b-c| = |a-c| / 2 within tolerance."""
    half = 0.5 * distance(a, c)
    slack = tol.eta_collinear * max(1.0, 2.0 * half)
    return abs(distance(a, b) - half) <= slack and abs(distance(b, c) - half) <= slack


MAX_HULL_DIMENSION = 8


@dataclass(frozen=True)
class HullRepresentation:
    """Half-space form {x : normals @ x <= offsets} of a convex region.

    Normals are unit length where they came from facets; degenerate
    (affine dimension < n) hulls carry paired opposing constraints for the
    flattened directions instead of being projected away.
    """

    dimension: int
    normals: tuple[tuple[float, ...], ...]
    offsets: tuple[float, ...]

    def intersect(self, other: "HullRepresentation") -> "HullRepresentation":
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"hull dimensions {self.dimension} vs {other.dimension}")
        return HullRepresentation(self.dimension,
                                  self.normals + other.normals,
                                  self.offsets + other.offsets)

    @staticmethod
    def from_constraints(normals, offsets) -> "HullRepresentation":
        normals = tuple(tuple(float(x) for x in row) for row in normals)
        offsets = tuple(float(b) for b in offsets)
        if len(normals) != len(offsets) or not normals:
            raise ValueError("need matching, nonempty normals/offsets")
        dim = check_same_dimension(normals)
        return HullRepresentation(dim, normals, offsets)


def convex_hull(points) -> HullRepresentation:
    """Half-space representation of the convex hull of ``points``.

    Handles degenerate input (collinear, coplanar, single point) by
    splitting off the affine hull: flattened directions become equality
    pairs of half-spaces, and the hull is computed inside the span.
    Dimension is capped at MAX_HULL_DIMENSION.
    """
    pts = [as_vector(p) for p in points]
    if not pts:
        raise ValueError("convex_hull of empty point set")
    dim = check_same_dimension(pts)
    if dim > MAX_HULL_DIMENSION:
        raise ValueError(f"hull dimension {dim} exceeds cap {MAX_HULL_DIMENSION}")

    arr = np.asarray(pts, dtype=float)
    center = arr.mean(axis=0)
    shifted = arr - center

    # affine rank via SVD; rows of vt span the point set / its complement
    _, svals, vt = np.linalg.svd(shifted, full_matrices=True)
    scale = float(svals[0]) if svals.size and svals[0] > 0 else 1.0
    rank = int(np.sum(svals > 1e-12 * max(1.0, scale)))

    normals: list[tuple[float, ...]] = []
    offsets: list[float] = []

    # equality pairs pinning the flattened directions
    for k in range(rank, dim):
        direction = vt[k]
        level = float(direction @ center)
        normals.append(tuple(direction))
        offsets.append(level)
        normals.append(tuple(-direction))
        offsets.append(-level)

    if rank == 0:
        pass  # single point: the equality pairs above already pin every axis
    elif rank == 1:
        axis = vt[0]
        coords = shifted @ axis
        lo, hi = float(coords.min()), float(coords.max())
        base = float(axis @ center)
        normals.append(tuple(axis))
        offsets.append(base + hi)
        normals.append(tuple(-axis))
        offsets.append(-(base + lo))
    else:
        from scipy.spatial import ConvexHull as _QHull

        basis = vt[:rank]
        projected = shifted @ basis.T
        hull = _QHull(projected)
        # qhull rows are (unit normal, offset) with normal·y + offset <= 0
        for row in hull.equations:
            n_proj, off = row[:-1], float(row[-1])
            n_full = n_proj @ basis
            offsets.append(float(n_full @ center) - off)
            normals.append(tuple(n_full))

    return HullRepresentation(dim, tuple(normals), tuple(offsets))


def hull_contains(h: HullRepresentation, x, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Membership test: every half-space satisfied within eta_hull
    (plus a small fixed float allowance)."""
    point = as_vector(x)
    if len(point) != h.dimension:
        raise DimensionMismatchError(
            f"point dimension {len(point)} vs hull dimension {h.dimension}")
    allowance = tol.eta_hull + _FLOAT_SLACK
    for normal, offset in zip(h.normals, h.offsets):
        if math.fsum(n * c for n, c in zip(normal, point)) > offset + allowance:
            return False
    return True
