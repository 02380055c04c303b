"""Theorem-level verification: convex-map certification, image convexity,
level-set connectivity, openness surrogate, local checks on neighborhood
components, and the combined local-to-global report.

Certification logic.  On a finite graph the infimum defining the map
distance is attained, so a pair admits a monotone-straight path exactly
when its distance does not exceed the straightness bound of its image
gap; shortest paths then serve as certificates and excess distance is a
proof of absence (every path is at least as long as the shortest).
Witness kinds:

* DisconnectedFiber -- a level whose ball preimage splits.
* NoStraightPath    -- a pair with distance above the straightness bound.
* NonConvexImage    -- a midpoint (or hull grid point) far from the image.
* NotOpen           -- an image point inside a vertex's safe radius that
                       its graph ball misses.

Openness is a graph-ball surrogate and is reported with its margins; on
coarse meshes it is heuristic by nature.

Pair evaluations are pure and independent; results are aggregated in
sorted order so serialized verdicts are reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .geometry import (
    as_vector,
    convex_hull,
    distance,
    hull_contains,
    straight_length_bound,
    MAX_HULL_DIMENSION,
)
from .metric import (
    EXHAUSTIVE_SEARCH_VERTEX_CAP,
    PsiPathResult,
    distance_matrix,
    exhaustive_straight_path,
    shortest_psi_path,
)
from .space import (
    EmbeddedSpace,
    FiberComponent,
    fiber_components,
    is_connected,
    neighborhood_component,
    subspace_from_vertices,
)

CONVEX = "Convex"
NOT_CONVEX = "NotConvex"
INCONCLUSIVE = "Inconclusive"

KIND_DISCONNECTED_FIBER = "DisconnectedFiber"
KIND_NO_STRAIGHT_PATH = "NoStraightPath"
KIND_NON_CONVEX_IMAGE = "NonConvexImage"
KIND_NOT_OPEN = "NotOpen"

EXHAUSTIVE_VERTEX_CAP = 300
CERTIFICATE_CAP = 64
WITNESS_CAP = 32


@dataclass(frozen=True)
class WitnessRecord:
    kind: str
    data: dict

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "data": self.data}


@dataclass
class Verdict:
    status: str
    witnesses: list[WitnessRecord] = field(default_factory=list)
    certificates: list[PsiPathResult] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def is_convex(self) -> bool:
        return self.status == CONVEX

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "certificates": [
                {"path": list(c.path), "psi_length": c.psi_length,
                 "is_straight": c.is_straight}
                for c in self.certificates
            ],
            "stats": self.stats,
        }


def _pair_bound(space: EmbeddedSpace, gap: float) -> float:
    return straight_length_bound(gap, space.tolerances)


def _dedup_image_points(space: EmbeddedSpace) -> list:
    """Distinct psi values, clustered at eps_fiber, in sorted order."""
    values = sorted(set(space.psi(v) for v in space.vertex_ids()))
    eps = space.tolerances.eps_fiber
    if eps <= 0 or len(values) < 2:
        return values
    kept: list = []
    for val in values:
        if kept and distance(kept[-1], val) <= eps:
            continue
        kept.append(val)
    return kept


def _zero_components(space: EmbeddedSpace) -> dict[int, int]:
    """Label vertices by their component in the zero-weight subgraph."""
    eta = space.tolerances.eta_zero
    label: dict[int, int] = {}
    for v in space.vertex_ids():
        if v in label:
            continue
        stack = [v]
        label[v] = v
        while stack:
            u = stack.pop()
            for w in space.neighbors(u):
                if w in label or space.edge_psi_length(u, w) > eta:
                    continue
                label[w] = v
                stack.append(w)
    return label


def _fiber_clusters(space: EmbeddedSpace) -> list[list[int]]:
    """Vertices grouped by (near-)equal psi value, deterministic order."""
    by_value: dict[tuple, list[int]] = {}
    for v in space.vertex_ids():
        by_value.setdefault(space.psi(v), []).append(v)
    clusters: list[list[int]] = []
    eps = space.tolerances.eps_fiber
    for value in sorted(by_value):
        if clusters and eps > 0 and distance(space.psi(clusters[-1][0]), value) <= eps:
            clusters[-1].extend(by_value[value])
        else:
            clusters.append(list(by_value[value]))
    return [sorted(c) for c in clusters]


def _disconnected_fiber_witness(space: EmbeddedSpace, level,
                                default_radius: float) -> WitnessRecord | None:
    """Build a DisconnectedFiber witness that re-verifies: record a radius
    at which fiber_components really returns >= 2 components."""
    for radius in (0.0, default_radius):
        comps = fiber_components(space, level, radius)
        if len(comps) >= 2:
            return WitnessRecord(KIND_DISCONNECTED_FIBER, {
                "level": list(level),
                "radius": radius if radius > 0 else space.tolerances.eps_fiber,
                "ball": "exact" if radius == 0.0 else "open",
                "component_count": len(comps),
                "component_minima": [c.sorted_members()[0] for c in comps],
            })
    return None


def default_level_radius(space: EmbeddedSpace) -> float:
    """Ball radius for level-set sampling: the median nonzero edge length.

    Exact-tolerance fibers on meshes are too thin to see the level-set
    topology (equal-value vertices need not be adjacent), so the sampler
    fattens levels to the mesh scale.  Radius 0 remains available for
    spaces whose fibers are exact.
    """
    return space.median_nonzero_edge_psi_length


@dataclass(frozen=True)
class LevelSampling:
    """Which levels to test and how fat the ball around each is.

    ``levels`` None derives them from the distinct vertex values
    (deduplicated at eps_fiber); ``max_levels`` subsamples evenly;
    ``radius`` None uses :func:`default_level_radius`.
    """

    levels: tuple | None = None
    max_levels: int | None = None
    radius: float | None = None


def verify_convex_map(space: EmbeddedSpace, mode: str = "exhaustive",
                      samples: int = 200, seed: int = 0,
                      collect_certificates: bool = True,
                      witness_cap: int = WITNESS_CAP) -> Verdict:
    """Certify that every tested vertex pair admits a monotone-straight
    path, or produce a witness pair/level.

    Exhaustive mode tests all pairs (intended for spaces up to
    EXHAUSTIVE_VERTEX_CAP vertices); sampled mode tests ``samples``
    seeded pairs plus every level-set cluster.  Distances decide
    certification; witnesses carry enough data to re-verify.
    """
    ids = space.vertex_ids()
    stats: dict = {"mode": mode, "vertices": len(ids),
                   "pairs_tested": 0, "pairs_certified": 0,
                   "max_residual": 0.0, "depth_cap_hits": 0}
    if mode == "sampled":
        stats["samples"] = samples
        stats["seed"] = seed

    if len(ids) <= 1:
        return Verdict(CONVEX, stats=stats)

    if not is_connected(space):
        comps = space.connected_components()
        witness = WitnessRecord(KIND_DISCONNECTED_FIBER, {
            "reason": "space_disconnected",
            "component_count": len(comps),
            "component_minima": [c[0] for c in comps],
        })
        stats["connected"] = False
        return Verdict(NOT_CONVEX, witnesses=[witness], stats=stats)

    psi = np.asarray([space.psi(v) for v in ids], dtype=float)
    index = {v: i for i, v in enumerate(ids)}
    eta = space.tolerances.eta_collinear
    band = default_level_radius(space)

    witnesses: list[WitnessRecord] = []
    certificates: list[PsiPathResult] = []
    failing_pairs: list[tuple[int, int, float, float]] = []

    def record_failure(u: int, v: int, d: float, gap: float) -> None:
        level = space.psi(u) if gap <= 2 * space.tolerances.eps_fiber else None
        if level is not None:
            fiber_witness = _disconnected_fiber_witness(space, level, band)
            if fiber_witness is not None:
                witnesses.append(fiber_witness)
                return
        data = {"pair": [u, v], "psi_distance": d, "image_gap": gap,
                "proof": "metric"}
        if len(space) <= EXHAUSTIVE_SEARCH_VERTEX_CAP:
            if exhaustive_straight_path(space, u, v) is None:
                data["proof"] = "exhaustive"
        witnesses.append(WitnessRecord(KIND_NO_STRAIGHT_PATH, data))

    if mode == "exhaustive":
        dmat = distance_matrix(space)
        gaps = np.sqrt(np.maximum(
            ((psi[:, None, :] - psi[None, :, :]) ** 2).sum(axis=2), 0.0))
        ok = dmat <= gaps + eta * np.maximum(1.0, dmat)
        iu, ju = np.triu_indices(len(ids), k=1)
        ok_flat = ok[iu, ju]
        stats["pairs_tested"] = int(iu.size)
        stats["pairs_certified"] = int(ok_flat.sum())
        certified_resid = (dmat - gaps)[iu, ju][ok_flat]
        if certified_resid.size:
            stats["max_residual"] = float(certified_resid.max())
        if collect_certificates:
            good = np.nonzero(ok_flat)[0][:CERTIFICATE_CAP]
            for k in good:
                certificates.append(
                    shortest_psi_path(space, ids[int(iu[k])], ids[int(ju[k])]))
        for k in np.nonzero(~ok_flat)[0]:
            i, j = int(iu[k]), int(ju[k])
            failing_pairs.append((ids[i], ids[j],
                                  float(dmat[i, j]), float(gaps[i, j])))
            if len(failing_pairs) >= witness_cap:
                break
    elif mode == "sampled":
        rng = random.Random(seed)
        pairs: list[tuple[int, int]] = []
        seen = set()
        attempts = 0
        while len(pairs) < samples and attempts < samples * 20:
            attempts += 1
            u, v = rng.randrange(len(ids)), rng.randrange(len(ids))
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            pairs.append((ids[key[0]], ids[key[1]]))
        pairs.sort()
        sources = sorted(set(u for u, _ in pairs))
        if sources:
            dmat = distance_matrix(space, sources=sources)
            row = {s: k for k, s in enumerate(sources)}
            for u, v in pairs:
                d = float(dmat[row[u], index[v]])
                gap = distance(space.psi(u), space.psi(v))
                stats["pairs_tested"] += 1
                if d <= gap + eta * max(1.0, d):
                    stats["pairs_certified"] += 1
                    stats["max_residual"] = max(stats["max_residual"], d - gap)
                    if collect_certificates and len(certificates) < CERTIFICATE_CAP:
                        certificates.append(shortest_psi_path(space, u, v))
                elif len(failing_pairs) < witness_cap:
                    failing_pairs.append((u, v, d, gap))

        # every level-set cluster: pairs inside a fiber must be joined by
        # zero-length moves, which reduces to the zero-weight subgraph
        zero = _zero_components(space)
        fiber_pairs = 0
        cluster_failures = 0
        for cluster in _fiber_clusters(space):
            if len(cluster) < 2:
                continue
            comps: dict[int, int] = {}
            for v in cluster:
                comps.setdefault(zero[v], v)
            count = len(cluster) * (len(cluster) - 1) // 2
            fiber_pairs += count
            if len(comps) > 1:
                reps = sorted(comps.values())
                u, v = reps[0], reps[1]
                gap = distance(space.psi(u), space.psi(v))
                d = _pairwise_distance(space, u, v)
                if d > gap + eta * max(1.0, d):
                    cluster_failures += 1
                    record_failure(u, v, d, gap)
                    continue
            stats["pairs_certified"] += count
        stats["fiber_pairs"] = fiber_pairs
        stats["pairs_tested"] += fiber_pairs
        stats["cluster_failures"] = cluster_failures
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for u, v, d, gap in failing_pairs:
        if len(witnesses) >= witness_cap:
            break
        record_failure(u, v, d, gap)
    if mode == "exhaustive":
        stats["failing_pairs"] = stats["pairs_tested"] - stats["pairs_certified"]
    else:
        stats["failing_pairs"] = len(failing_pairs) + stats.get("cluster_failures", 0)

    if witnesses:
        return Verdict(NOT_CONVEX, witnesses=witnesses,
                       certificates=certificates, stats=stats)
    return Verdict(CONVEX, certificates=certificates, stats=stats)


def _pairwise_distance(space: EmbeddedSpace, u: int, v: int) -> float:
    from .metric import psi_distance
    return psi_distance(space, u, v)


def verify_image_convexity(space: EmbeddedSpace) -> Verdict:
    """Discrete image-convexity surrogate: every midpoint of two image
    points (and, in low dimension, every hull-interior grid point) must
    lie within one maximal edge length of the image."""
    points = _dedup_image_points(space)
    stats: dict = {"image_points": len(points)}
    if len(points) <= 1:
        return Verdict(CONVEX, stats=stats)

    delta = space.max_edge_psi_length
    if delta <= 0:
        delta = space.tolerances.eps_fiber
    stats["delta_cover"] = delta

    arr = np.asarray(points, dtype=float)
    tree = cKDTree(arr)
    n = arr.shape[1]

    witnesses: list[WitnessRecord] = []

    # midpoints of all image pairs, chunked through the KD-tree
    idx_i, idx_j = np.triu_indices(len(points), k=1)
    stats["midpoints_tested"] = int(idx_i.size)
    chunk = 65536
    worst = 0.0
    for start in range(0, idx_i.size, chunk):
        sl = slice(start, start + chunk)
        mids = 0.5 * (arr[idx_i[sl]] + arr[idx_j[sl]])
        dists, _ = tree.query(mids)
        worst = max(worst, float(dists.max()))
        bad = np.nonzero(dists > delta)[0]
        for k in bad[:4]:
            if len(witnesses) >= WITNESS_CAP:
                break
            witnesses.append(WitnessRecord(KIND_NON_CONVEX_IMAGE, {
                "midpoint": [float(x) for x in mids[k]],
                "nearest_image_distance": float(dists[k]),
                "delta_cover": delta,
                "pair": [points[int(idx_i[sl][k])], points[int(idx_j[sl][k])]],
            }))
    stats["max_midpoint_gap"] = worst

    if n <= MAX_HULL_DIMENSION:
        hull = convex_hull(points)
        stats["hull_facets"] = len(hull.normals)
        if n <= 3 and delta > 0 and not witnesses:
            lo, hi = arr.min(axis=0), arr.max(axis=0)
            steps = [max(2, min(41, int((hi[k] - lo[k]) / delta) + 2))
                     for k in range(n)]
            axes = [np.linspace(lo[k], hi[k], steps[k]) for k in range(n)]
            mesh = np.stack([g.ravel() for g in np.meshgrid(*axes)], axis=1)
            inside = [p for p in mesh
                      if hull_contains(hull, tuple(p), space.tolerances)]
            stats["grid_points_tested"] = len(inside)
            if inside:
                dists, _ = tree.query(np.asarray(inside))
                bad = np.nonzero(dists > delta)[0]
                for k in bad[:4]:
                    witnesses.append(WitnessRecord(KIND_NON_CONVEX_IMAGE, {
                        "grid_point": [float(x) for x in inside[k]],
                        "nearest_image_distance": float(dists[k]),
                        "delta_cover": delta,
                    }))

    status = NOT_CONVEX if witnesses else CONVEX
    return Verdict(status, witnesses=witnesses, stats=stats)


def verify_fiber_connectivity(space: EmbeddedSpace,
                              sampling: LevelSampling | None = None) -> Verdict:
    """Every sampled level must have a connected ball preimage."""
    sampling = sampling or LevelSampling()
    levels = list(sampling.levels) if sampling.levels is not None \
        else _dedup_image_points(space)
    if sampling.max_levels is not None and len(levels) > sampling.max_levels:
        picks = np.linspace(0, len(levels) - 1, sampling.max_levels)
        levels = [levels[int(round(k))] for k in picks]
    radius = sampling.radius if sampling.radius is not None \
        else default_level_radius(space)

    stats: dict = {"levels_tested": len(levels), "radius": radius,
                   "max_components": 0}
    witnesses: list[WitnessRecord] = []
    for level in levels:
        comps = fiber_components(space, as_vector(level), radius)
        stats["max_components"] = max(stats["max_components"], len(comps))
        if len(comps) >= 2:
            witnesses.append(WitnessRecord(KIND_DISCONNECTED_FIBER, {
                "level": [float(x) for x in level],
                "radius": radius if radius > 0 else space.tolerances.eps_fiber,
                "ball": "open" if radius > 0 else "exact",
                "component_count": len(comps),
                "component_minima": [c.sorted_members()[0] for c in comps],
            }))
            break  # first offending level is the witness
    status = NOT_CONVEX if witnesses else CONVEX
    return Verdict(status, witnesses=witnesses, stats=stats)


def _openness_scan(vertex_ids, psi_of, neighbors_of, tolerances,
                   radius_steps: int, dedup_points=None):
    """Shared openness kernel over an arbitrary (sub)graph view.

    Returns (witness data dicts, stats).  ``dedup_points``, when given,
    is the deduplicated image point list to test against.
    """
    stats: dict = {"radius_steps": radius_steps, "balls_checked": 0,
                   "min_rho": math.inf, "max_uncovered": 0.0}
    ids = list(vertex_ids)
    witnesses: list[dict] = []
    if len(ids) <= 1:
        stats["min_rho"] = 0.0
        return witnesses, stats

    if dedup_points is None:
        values = sorted(set(psi_of(v) for v in ids))
        eps = tolerances.eps_fiber
        dedup_points = []
        for val in values:
            if dedup_points and eps > 0 and distance(dedup_points[-1], val) <= eps:
                continue
            dedup_points.append(val)
    arr = np.asarray(dedup_points, dtype=float)
    tree = cKDTree(arr)
    match_tol = max(tolerances.eps_fiber, tolerances.eta_zero)
    eta = tolerances.eta_zero

    for v in ids:
        center = psi_of(v)
        ball = {v}
        frontier = [v]
        for r in range(1, radius_steps + 1):
            boundary = []
            for u in frontier:
                for w in neighbors_of(u):
                    if w not in ball:
                        ball.add(w)
                        boundary.append(w)
            frontier = boundary
            if not boundary:
                break  # ball swallowed the component: everything is covered
            rho = min(distance(psi_of(b), center) for b in boundary)
            stats["balls_checked"] += 1
            stats["min_rho"] = min(stats["min_rho"], rho)
            if rho <= eta:
                continue
            ball_values = np.asarray(sorted(set(psi_of(u) for u in ball)))
            candidates = tree.query_ball_point(np.asarray(center), rho + eta)
            for k in sorted(candidates):
                w_val = arr[k]
                gap = float(np.sqrt(((ball_values - w_val) ** 2).sum(axis=1)).min())
                if gap > match_tol:
                    stats["max_uncovered"] = max(stats["max_uncovered"], gap)
                    if len(witnesses) < WITNESS_CAP:
                        witnesses.append({
                            "vertex": v, "hop_radius": r,
                            "skipped_level": [float(x) for x in w_val],
                            "rho": rho, "coverage_gap": gap,
                        })
    if math.isinf(stats["min_rho"]):
        stats["min_rho"] = 0.0
    return witnesses, stats


def verify_openness(space: EmbeddedSpace, radius_steps: int = 1) -> Verdict:
    """Graph-ball openness surrogate.

    For every vertex v and hop radius r, let rho be the smallest image
    gap to the ball's boundary; every image point within rho of psi(v)
    must already appear (at binning tolerance) among the ball's values.
    Vertices whose boundary touches their own level (rho == 0) give a
    vacuous check; results on coarse meshes are heuristic and the margin
    is reported.
    """
    if radius_steps < 1:
        raise ValueError("radius_steps must be >= 1")
    data, stats = _openness_scan(space.vertex_ids(), space.psi,
                                 space.neighbors, space.tolerances,
                                 radius_steps,
                                 dedup_points=_dedup_image_points(space))
    witnesses = [WitnessRecord(KIND_NOT_OPEN, d) for d in data]
    status = NOT_CONVEX if witnesses else CONVEX
    return Verdict(status, witnesses=witnesses, stats=stats)


def verify_local_convexity(space: EmbeddedSpace, x: int, eps: float,
                           samples: int = 200, seed: int = 0) -> Verdict:
    """Verify the map restricted to the neighborhood component of x at
    radius eps: it must be a convex map and open onto its image."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    component = neighborhood_component(space, x, eps)
    sub = subspace_from_vertices(space, component.member_vertex_ids,
                                 name=f"{space.name}|U[{x}]@{eps:g}")
    mode = "exhaustive" if len(sub) <= EXHAUSTIVE_VERTEX_CAP else "sampled"
    convex = verify_convex_map(sub, mode=mode, samples=samples, seed=seed)
    openness = verify_openness(sub)
    status = CONVEX if convex.is_convex and openness.is_convex else convex.status
    if convex.is_convex and not openness.is_convex:
        status = NOT_CONVEX
    stats = {"vertex": x, "eps": eps, "component_size": len(sub),
             "component_min_vertex": min(component.member_vertex_ids),
             "convex_map": convex.stats, "openness": openness.stats}
    return Verdict(status, witnesses=convex.witnesses + openness.witnesses,
                   certificates=convex.certificates, stats=stats)


def cover_chain(sets, fiber: FiberComponent,
                start: int | None = None, end: int | None = None) -> list[int] | None:
    """Chain of indices through the overlap graph of ``sets``: consecutive
    sets intersect inside the fiber.  None when the overlap graph is
    disconnected, which certifies the fiber was not a single component.

    Sets that miss the fiber entirely are discarded first; by default the
    chain runs from the first to the last surviving set.
    """
    members = fiber.member_vertex_ids
    kept = [i for i, s in enumerate(sets) if members & set(s)]
    if not kept:
        return None
    src = kept[0] if start is None else start
    dst = kept[-1] if end is None else end
    if src not in kept or dst not in kept:
        return None
    overlap = {i: [] for i in kept}
    for a_pos, i in enumerate(kept):
        for j in kept[a_pos + 1:]:
            if set(sets[i]) & set(sets[j]) & members:
                overlap[i].append(j)
                overlap[j].append(i)
    # breadth-first chain, neighbors in sorted order for determinism
    parent = {src: None}
    queue = [src]
    while queue:
        node = queue.pop(0)
        if node == dst:
            chain = []
            while node is not None:
                chain.append(node)
                node = parent[node]
            return chain[::-1]
        for nxt in sorted(overlap[node]):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class ReportConfig:
    """Knobs for :func:`local_to_global_report`; defaults are deterministic."""

    eps_schedule: tuple[float, ...] | None = None
    mode: str = "auto"  # auto | exhaustive | sampled
    samples: int = 200
    seed: int = 0
    radius_steps: int = 1
    max_levels: int | None = None
    level_radius: float | None = None
    exhaustive_cap: int = EXHAUSTIVE_VERTEX_CAP

    def resolve_mode(self, space: EmbeddedSpace) -> str:
        if self.mode != "auto":
            return self.mode
        return "exhaustive" if len(space) <= self.exhaustive_cap else "sampled"

    def resolve_schedule(self, space: EmbeddedSpace) -> tuple[float, ...]:
        if self.eps_schedule:
            return tuple(self.eps_schedule)
        base = space.median_nonzero_edge_psi_length
        if base <= 0:
            base = max(space.tolerances.eps_fiber, 1e-6)
        return (2 * base, 4 * base, 8 * base)


@dataclass
class Report:
    """Structured outcome of the local-to-global check, schema version 1."""

    name: str
    hypotheses: dict
    conclusions: dict
    verdicts: dict
    witnesses: list[WitnessRecord]
    stats: dict
    overall: str  # convex | not_convex | inconclusive
    anomaly: bool

    REPORT_VERSION = 1

    def to_json_dict(self) -> dict:
        return {
            "report_version": self.REPORT_VERSION,
            "format": "space",
            "name": self.name,
            "hypotheses": self.hypotheses,
            "conclusions": self.conclusions,
            "verdicts": {k: v.to_json_dict() for k, v in self.verdicts.items()},
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "stats": self.stats,
            "overall": self.overall,
            "anomaly": self.anomaly,
        }

    def to_text(self) -> str:
        lines = [f"space: {self.name or '<unnamed>'}"]
        hyp = self.hypotheses
        lines.append(f"hypotheses: connected={hyp['connected']} "
                     f"proper={hyp['proper']} local_all_ok={hyp['local_all_ok']}")
        for key, val in self.conclusions.items():
            lines.append(f"conclusion {key}: {'ok' if val else 'FAILED'}")
        for w in self.witnesses[:8]:
            lines.append(f"witness {w.kind}: {w.data}")
        if self.anomaly:
            lines.append("ANOMALY: hypotheses hold but a conclusion failed "
                         "(discretization artifact or bug)")
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines) + "\n"


def local_to_global_report(space: EmbeddedSpace,
                           config: ReportConfig | None = None) -> Report:
    """Check the hypotheses (connected, proper-by-finiteness, locally
    convex-and-open at some radius from the schedule) and the conclusions
    (convex map, convex image, connected levels, openness), and flag any
    hypotheses-hold/conclusions-fail inconsistency instead of hiding it."""
    config = config or ReportConfig()
    connected = is_connected(space)
    schedule = config.resolve_schedule(space)

    ids = space.vertex_ids()
    index = {v: i for i, v in enumerate(ids)}
    psi_arr = np.asarray([space.psi(v) for v in ids], dtype=float)

    # One full-space straightness matrix answers every patch question: a
    # pair is certified inside a ball component iff it is certified in
    # the whole space, because a length-minimal straight path's image
    # rides the segment between the endpoint values and therefore stays
    # inside the (convex) ball preimage and the component.
    eta = space.tolerances.eta_collinear
    dmat = distance_matrix(space)
    gaps = np.sqrt(np.maximum(
        ((psi_arr[:, None, :] - psi_arr[None, :, :]) ** 2).sum(axis=2), 0.0))
    cert = dmat <= gaps + eta * np.maximum(1.0, dmat)

    local_entries: list[dict] = []
    cache: dict[frozenset, bool] = {}

    def patch_ok(comp: list[int]) -> bool:
        key = frozenset(comp)
        if key in cache:
            return cache[key]
        idx = np.asarray([index[u] for u in comp])
        ok = bool(cert[np.ix_(idx, idx)].all())
        if ok:
            member_set = key
            data, _ = _openness_scan(
                comp, space.psi,
                lambda u: [w for w in space.neighbors(u) if w in member_set],
                space.tolerances, config.radius_steps)
            ok = not data
        cache[key] = ok
        return ok

    for pos, v in enumerate(ids):
        ok_eps = None
        for eps in schedule:
            # vectorized ball preimage, then the component containing v
            mask = np.sqrt(((psi_arr - psi_arr[pos]) ** 2).sum(axis=1)) < eps
            members = [ids[k] for k in np.nonzero(mask)[0]]
            comp = next(c for c in space.connected_components(within=members)
                        if v in c)
            if patch_ok(comp):
                ok_eps = eps
                break
        local_entries.append({"vertex": v, "eps": ok_eps, "ok": ok_eps is not None})

    local_all_ok = all(e["ok"] for e in local_entries)
    hypotheses = {
        "connected": connected,
        "proper": "satisfied-by-finiteness",
        "local": local_entries,
        "local_all_ok": local_all_ok,
        "eps_schedule": list(schedule),
    }

    mode = config.resolve_mode(space)
    convex = verify_convex_map(space, mode=mode, samples=config.samples,
                               seed=config.seed)
    image = verify_image_convexity(space)
    fibers = verify_fiber_connectivity(
        space, LevelSampling(max_levels=config.max_levels,
                             radius=config.level_radius))
    openness = verify_openness(space, radius_steps=config.radius_steps)

    verdicts = {"convex_map": convex, "image": image,
                "fibers": fibers, "openness": openness}
    conclusions = {
        "convex_map": convex.is_convex,
        "image_convex": image.is_convex,
        "fibers_connected": fibers.is_convex,
        "open": openness.is_convex,
    }
    witnesses = [w for v in verdicts.values() for w in v.witnesses]

    all_ok = all(conclusions.values())
    hypotheses_hold = connected and local_all_ok
    anomaly = hypotheses_hold and not all_ok
    if all_ok and connected:
        overall = "convex"
    elif any(v.status == NOT_CONVEX for v in verdicts.values()) or not connected:
        overall = "not_convex"
    else:
        overall = "inconclusive"

    stats = {
        "vertices": len(space),
        "edges": len(space.edges()),
        "mode": mode,
        "distinct_components_checked": len(cache),
    }
    return Report(space.name, hypotheses, conclusions, verdicts,
                  witnesses, stats, overall, anomaly)
