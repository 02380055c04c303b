"""Distance induced by the map: shortest total image length over graph
paths, plus the midpoint / dyadic-bisection machinery that turns
near-minimal paths into monotone-straight ones.

Distances are exact on the graph, so unlike the continuous setting the
infimum is attained by a Dijkstra path; the dyadic construction is kept
because its per-segment certificates are what the verifier reports, and
because on refined meshes it localizes failures.

All functions are read-only on the space and hold no shared caches.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .geometry import distance, is_monotone_straight, path_length, straight_length_bound
from .space import EmbeddedSpace


class NoPathError(ValueError):
    """The two vertices lie in different graph components."""


@dataclass(frozen=True)
class PsiPathResult:
    """A vertex path with its image length and straightness flag."""

    path: tuple[int, ...]
    psi_length: float
    is_straight: bool

    def image(self, space: EmbeddedSpace) -> list:
        return [space.psi(v) for v in self.path]


def _image(space: EmbeddedSpace, path) -> list:
    return [space.psi(v) for v in path]


def _result(space: EmbeddedSpace, path) -> PsiPathResult:
    img = _image(space, path)
    return PsiPathResult(tuple(path), path_length(img),
                         is_monotone_straight(img, space.tolerances))


def psi_distance(space: EmbeddedSpace, x0: int, x1: int) -> float:
    """Shortest total image length between two vertices; inf when they
    sit in different components.

    Symmetric by construction: the query is canonicalized to the smaller
    vertex id, so d(a, b) and d(b, a) run the identical computation.
    """
    space.vertex(x0), space.vertex(x1)  # raises KeyError on unknown ids
    a, b = (x0, x1) if x0 <= x1 else (x1, x0)
    if a == b:
        return 0.0
    dist, _ = _dijkstra(space, a, target=b)
    return dist.get(b, math.inf)


def shortest_psi_path(space: EmbeddedSpace, x0: int, x1: int) -> PsiPathResult:
    """A path attaining psi_distance, with deterministic tie-breaking:
    least image length, then fewest edges, then lexicographically
    smallest vertex sequence."""
    space.vertex(x0), space.vertex(x1)
    if x0 == x1:
        return _result(space, (x0,))
    dist, paths = _dijkstra(space, x0, target=x1)
    if x1 not in dist:
        raise NoPathError(f"vertices {x0} and {x1} are in different components")
    return _result(space, paths[x1])


def _dijkstra(space: EmbeddedSpace, source: int, target: int | None = None,
              limit: float = math.inf):
    """Label-setting search with keys (length, hops, path).

    The composite key is isotone under appending an edge, so the first
    finalization per vertex is optimal in the lexicographic order; the
    path component makes tie-breaking reproducible.  ``limit`` prunes
    vertices strictly farther than the given length.
    """
    dist: dict[int, float] = {}
    paths: dict[int, tuple[int, ...]] = {}
    heap = [(0.0, 0, (source,))]
    while heap:
        d, hops, path = heapq.heappop(heap)
        v = path[-1]
        if v in dist:
            continue
        dist[v] = d
        paths[v] = path
        if v == target:
            break
        for w in space.neighbors(v):
            if w in dist:
                continue
            nd = d + space.edge_psi_length(v, w)
            if nd > limit:
                continue
            heapq.heappush(heap, (nd, hops + 1, path + (w,)))
    return dist, paths


def distance_matrix(space: EmbeddedSpace, sources=None) -> np.ndarray:
    """Bulk psi-distances via scipy's csgraph Dijkstra.

    Returns a (len(sources), |V|) array indexed by position in
    ``space.vertex_ids()``.  Zero-weight edges are kept as explicit
    entries so level-set edges work.  Used for throughput only; path
    extraction always goes through the deterministic search above.
    """
    ids = space.vertex_ids()
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    if n == 0:
        return np.zeros((0, 0))
    rows, cols, data = [], [], []
    for u, v in space.edges():
        w = space.edge_psi_length(u, v)
        rows.append(index[u])
        cols.append(index[v])
        data.append(w)
    graph = csr_matrix((data, (rows, cols)), shape=(n, n))
    if sources is None:
        indices = None
    else:
        indices = [index[s] for s in sources]
    return np.atleast_2d(_csgraph_dijkstra(graph, directed=False, indices=indices))


def midpoint_between(space: EmbeddedSpace, x0: int, x1: int) -> int:
    """Vertex on the shortest path whose prefix length is closest to half
    the total (ties: smaller prefix, then smaller id).

    The prefix of a shortest path is itself shortest, so the midpoint
    satisfies the two halving equalities up to the largest edge length
    on the path; exact halving is not attainable on a discrete path.
    """
    result = shortest_psi_path(space, x0, x1)
    img = result.image(space)
    half = 0.5 * result.psi_length
    best = None
    prefix = 0.0
    for i, v in enumerate(result.path):
        if i > 0:
            prefix += distance(img[i - 1], img[i])
        key = (abs(prefix - half), prefix, v)
        if best is None or key < best[0]:
            best = (key, v)
    return best[1]


def default_max_depth(space: EmbeddedSpace, total: float) -> int:
    """Bisection depth: enough levels to bring segments below the finest
    edge scale, plus two, capped at 24."""
    finest = space.min_nonzero_edge_psi_length
    if total <= 0 or finest <= 0:
        return 1
    return min(24, max(1, math.ceil(math.log2(total / finest)) + 2))


def dyadic_straighten(space: EmbeddedSpace, x0: int, x1: int,
                      max_depth: int | None = None) -> PsiPathResult:
    """Recursively insert midpoints until each dyadic segment is either
    monotone straight or shorter than the fiber binning radius, then
    judge the concatenated path as a whole.

    Depth exhaustion is not an error: the result comes back with
    ``is_straight`` False and the caller decides what that means.
    """
    total = psi_distance(space, x0, x1)
    if math.isinf(total):
        raise NoPathError(f"vertices {x0} and {x1} are in different components")
    if max_depth is None:
        max_depth = default_max_depth(space, total)
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")

    eps_fiber = space.tolerances.eps_fiber

    def refine(a: int, b: int, depth: int) -> tuple[int, ...]:
        segment = shortest_psi_path(space, a, b)
        if segment.is_straight or segment.psi_length <= eps_fiber or depth <= 0:
            return segment.path
        m = midpoint_between(space, a, b)
        if m == a or m == b:
            return segment.path
        left = refine(a, m, depth - 1)
        right = refine(m, b, depth - 1)
        return left + right[1:]

    return _result(space, refine(x0, x1, max_depth - 1))


EXHAUSTIVE_SEARCH_VERTEX_CAP = 12


def exhaustive_straight_path(space: EmbeddedSpace, x0: int, x1: int) -> PsiPathResult | None:
    """Enumerate simple paths in lexicographic order and return the first
    with a monotone-straight image, or None.

    Only meaningful on tiny spaces; the caller enforces the vertex cap.
    Pruning: a partial path longer than the straightness bound can never
    finish straight.
    """
    bound = straight_length_bound(distance(space.psi(x0), space.psi(x1)),
                                  space.tolerances)
    goal_found: list[tuple[int, ...]] = []

    def extend(path: list[int], length: float) -> bool:
        v = path[-1]
        if v == x1:
            if is_monotone_straight(_image(space, path), space.tolerances):
                goal_found.append(tuple(path))
                return True
            return False
        for w in space.neighbors(v):
            if w in path:
                continue
            step = space.edge_psi_length(v, w)
            if length + step > bound:
                continue
            path.append(w)
            if extend(path, length + step):
                return True
            path.pop()
        return False

    if x0 == x1:
        return _result(space, (x0,))
    extend([x0], 0.0)
    if not goal_found:
        return None
    return _result(space, goal_found[0])


def straight_path_between(space: EmbeddedSpace, x0: int, x1: int) -> PsiPathResult | None:
    """A path whose image is monotone straight, or None if none exists.

    Any shortest path of length <= the straightness bound is straight,
    and every path is at least as long as the shortest, so the Dijkstra
    route decides existence; dyadic refinement and (on spaces with at
    most EXHAUSTIVE_SEARCH_VERTEX_CAP vertices) exhaustive enumeration
    back it up.
    """
    try:
        candidate = shortest_psi_path(space, x0, x1)
    except NoPathError:
        return None
    if candidate.is_straight:
        return candidate
    refined = dyadic_straighten(space, x0, x1)
    if refined.is_straight:
        return refined
    if len(space) <= EXHAUSTIVE_SEARCH_VERTEX_CAP:
        return exhaustive_straight_path(space, x0, x1)
    return None
