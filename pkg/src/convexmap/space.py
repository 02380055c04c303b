"""Discrete model of a space with a map to R^n: a finite graph whose
vertices carry map values ("psi") and whose edges promise that the
underlying space contains an arc realizing the straight segment between
the endpoint values, traversed weakly monotonically.

The model contract is a promise made by whoever builds the space (the
generators in :mod:`convexmap.gallery` document their arcs); this module
trusts it.  Graph components therefore stand in for path components of
the underlying space, which is exactly as good as the contract.

An :class:`EmbeddedSpace` is immutable after construction; every query
here is read-only and may run concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .geometry import (
    Tolerances,
    Vector,
    as_vector,
    distance,
    hull_contains,
    HullRepresentation,
)

SPACE_FORMAT = "space"


class SpaceValidationError(ValueError):
    """Document failed validation; ``location`` points at the offender."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))
        self.location = location


@dataclass(frozen=True)
class VertexRecord:
    id: int
    psi: Vector
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class FiberComponent:
    """One graph-connected component of a level-set (ball) preimage."""

    level: Vector
    radius: float
    member_vertex_ids: frozenset[int]

    def sorted_members(self) -> list[int]:
        return sorted(self.member_vertex_ids)


class EmbeddedSpace:
    """Finite graph + per-vertex psi values, validated eagerly."""

    def __init__(self, dimension: int, vertices, edges, name: str = "",
                 tolerances: Tolerances | None = None):
        if dimension < 1:
            raise SpaceValidationError(f"dimension must be >= 1, got {dimension}")
        self.dimension = int(dimension)
        self.name = str(name)

        self._vertices: dict[int, VertexRecord] = {}
        for rec in vertices:
            if rec.id < 0:
                raise SpaceValidationError("vertex ids must be nonnegative",
                                           f"vertex {rec.id}")
            if rec.id in self._vertices:
                raise SpaceValidationError("duplicate vertex id", f"vertex {rec.id}")
            if len(rec.psi) != self.dimension:
                raise SpaceValidationError(
                    f"psi has dimension {len(rec.psi)}, space declares {self.dimension}",
                    f"vertex {rec.id}")
            self._vertices[rec.id] = rec

        self._edges: set[tuple[int, int]] = set()
        adjacency: dict[int, list[int]] = {v: [] for v in self._vertices}
        for u, v in edges:
            if u == v:
                raise SpaceValidationError("self-loop edge", f"edge ({u}, {v})")
            if u not in self._vertices or v not in self._vertices:
                raise SpaceValidationError("edge references unknown vertex",
                                           f"edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in self._edges:
                raise SpaceValidationError("duplicate edge", f"edge ({u}, {v})")
            self._edges.add(key)
            adjacency[key[0]].append(key[1])
            adjacency[key[1]].append(key[0])

        self._adjacency = {v: tuple(sorted(nbrs)) for v, nbrs in adjacency.items()}
        self._vertex_ids = tuple(sorted(self._vertices))

        lengths = sorted(self.edge_psi_length(u, v) for u, v in self._edges)
        self._edge_lengths = tuple(lengths)
        nonzero = [w for w in lengths if w > 0.0]
        self._min_nonzero_edge = nonzero[0] if nonzero else 0.0
        self._max_edge = lengths[-1] if lengths else 0.0
        self._median_nonzero_edge = nonzero[len(nonzero) // 2] if nonzero else 0.0

        base = tolerances if tolerances is not None else Tolerances()
        if base.eps_fiber == 0.0:
            # default binning radius: half the smallest nonzero edge length
            base = base.with_eps_fiber(0.5 * self._min_nonzero_edge)
        self.tolerances = base

    # -- basic accessors -------------------------------------------------

    def vertex_ids(self) -> tuple[int, ...]:
        return self._vertex_ids

    def vertex(self, vid: int) -> VertexRecord:
        try:
            return self._vertices[vid]
        except KeyError:
            raise KeyError(f"unknown vertex id {vid}") from None

    def psi(self, vid: int) -> Vector:
        return self.vertex(vid).psi

    def neighbors(self, vid: int) -> tuple[int, ...]:
        return self._adjacency[vid]

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edges

    def edge_psi_length(self, u: int, v: int) -> float:
        return distance(self._vertices[u].psi, self._vertices[v].psi)

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def min_nonzero_edge_psi_length(self) -> float:
        return self._min_nonzero_edge

    @property
    def max_edge_psi_length(self) -> float:
        return self._max_edge

    @property
    def median_nonzero_edge_psi_length(self) -> float:
        return self._median_nonzero_edge

    # -- connectivity and level sets -------------------------------------

    def connected_components(self, within=None) -> list[list[int]]:
        """Graph components, each sorted, ordered by smallest member.

        ``within`` restricts both the vertex set and the usable edges to
        the induced subgraph.
        """
        if within is None:
            allowed = None
            pool = self._vertex_ids
        else:
            allowed = set(within)
            pool = sorted(allowed)
        seen: set[int] = set()
        comps: list[list[int]] = []
        for start in pool:
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adjacency[v]:
                    if w in seen or (allowed is not None and w not in allowed):
                        continue
                    seen.add(w)
                    stack.append(w)
            comps.append(sorted(comp))
        return comps


def is_connected(space: EmbeddedSpace) -> bool:
    """Breadth-first reachability; the empty space counts as connected."""
    if len(space) == 0:
        return True
    return len(space.connected_components()) == 1


def ball_preimage(space: EmbeddedSpace, w, eps: float) -> list[int]:
    """Vertices whose psi value lies in the ball around ``w``.

    eps > 0 is the open ball (strict inequality); eps == 0 means the
    exact fiber at binning tolerance, the closed eps_fiber-ball.
    """
    center = as_vector(w)
    if len(center) != space.dimension:
        raise SpaceValidationError(
            f"level dimension {len(center)} vs space dimension {space.dimension}")
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if eps == 0.0:
        radius = space.tolerances.eps_fiber
        return [v for v in space.vertex_ids()
                if distance(space.psi(v), center) <= radius]
    return [v for v in space.vertex_ids()
            if distance(space.psi(v), center) < eps]


def fiber_components(space: EmbeddedSpace, w, eps: float = 0.0) -> list[FiberComponent]:
    """Partition of the ball preimage over ``w`` into graph components.

    Empty preimage gives an empty list.  Components are ordered by their
    smallest vertex id.
    """
    center = as_vector(w)
    members = ball_preimage(space, center, eps)
    if not members:
        return []
    radius = eps if eps > 0 else space.tolerances.eps_fiber
    return [FiberComponent(center, radius, frozenset(comp))
            for comp in space.connected_components(within=members)]


def neighborhood_component(space: EmbeddedSpace, x: int, eps: float) -> FiberComponent:
    """The component of the eps-ball preimage around psi(x) that contains x."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    for comp in fiber_components(space, space.psi(x), eps):
        if x in comp.member_vertex_ids:
            return comp
    raise AssertionError("vertex must lie in its own ball preimage")


def subspace_from_vertices(space: EmbeddedSpace, vertex_ids, name: str) -> EmbeddedSpace:
    """Induced subgraph on ``vertex_ids`` (edges with both endpoints kept)."""
    keep = set(vertex_ids)
    vertices = [space.vertex(v) for v in sorted(keep)]
    edges = [(u, v) for u, v in space.edges() if u in keep and v in keep]
    return EmbeddedSpace(space.dimension, vertices, edges, name=name,
                         tolerances=space.tolerances)


def induced_subspace(space: EmbeddedSpace, hull: HullRepresentation) -> EmbeddedSpace:
    """Restriction to the preimage of a convex region (half-space form)."""
    keep = [v for v in space.vertex_ids()
            if hull_contains(hull, space.psi(v), space.tolerances)]
    return subspace_from_vertices(space, keep,
                                  name=f"{space.name}|restricted")


def saturation_epsilon(space: EmbeddedSpace, w0, member_ids) -> float | None:
    """Largest ball radius around ``w0`` whose preimage stays inside the
    vertex set ``member_ids`` (minus eta_zero), or None when every vertex
    already belongs to it.

    Precondition: the exact fiber over w0 is contained in ``member_ids``.
    """
    center = as_vector(w0)
    members = set(member_ids)
    fiber = ball_preimage(space, center, 0.0)
    missing = [v for v in fiber if v not in members]
    if missing:
        raise ValueError(
            f"member set omits fiber vertices over {center}: {sorted(missing)[:5]}")
    outside = [v for v in space.vertex_ids() if v not in members]
    if not outside:
        return None
    nearest = min(distance(space.psi(v), center) for v in outside)
    return nearest - space.tolerances.eta_zero


# -- document round-trip --------------------------------------------------

def space_to_document(space: EmbeddedSpace) -> dict:
    return {
        "format": SPACE_FORMAT,
        "name": space.name,
        "dimension": space.dimension,
        "vertices": [
            {"id": rec.id, "psi": list(rec.psi),
             **({"labels": list(rec.labels)} if rec.labels else {})}
            for rec in (space.vertex(v) for v in space.vertex_ids())
        ],
        "edges": [[u, v] for u, v in space.edges()],
    }


def load_space(document: dict, tolerances: Tolerances | None = None) -> EmbeddedSpace:
    """Build a validated EmbeddedSpace from a document tree.

    Expected shape::

        {"format": "space", "name": ..., "dimension": n,
         "vertices": [{"id": 0, "psi": [...], "labels": [...]}, ...],
         "edges": [[u, v], ...]}
    """
    if not isinstance(document, dict):
        raise SpaceValidationError("document must be a JSON object")
    fmt = document.get("format", SPACE_FORMAT)
    if fmt != SPACE_FORMAT:
        raise SpaceValidationError(f"not a space document (format={fmt!r})")
    try:
        dimension = int(document["dimension"])
    except (KeyError, TypeError, ValueError):
        raise SpaceValidationError("missing or invalid 'dimension'") from None

    raw_vertices = document.get("vertices")
    raw_edges = document.get("edges")
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise SpaceValidationError("'vertices' and 'edges' must be lists")

    vertices = []
    for i, entry in enumerate(raw_vertices):
        loc = f"vertices[{i}]"
        try:
            vid = int(entry["id"])
            psi = as_vector(entry["psi"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpaceValidationError(f"bad vertex record: {exc}", loc) from None
        labels = tuple(str(t) for t in entry.get("labels", []))
        vertices.append(VertexRecord(vid, psi, labels))

    edges = []
    for i, entry in enumerate(raw_edges):
        loc = f"edges[{i}]"
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise SpaceValidationError("edge must be a pair", loc)
        edges.append((int(entry[0]), int(entry[1])))

    return EmbeddedSpace(dimension, vertices, edges,
                         name=str(document.get("name", "")),
                         tolerances=tolerances)


def load_space_file(path, tolerances: Tolerances | None = None) -> EmbeddedSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return load_space(json.load(fh), tolerances=tolerances)
