"""Deterministic generators for the worked example spaces, each with a
known ground-truth verdict.

Every edge a generator emits is backed by an explicit continuous arc in
the underlying space whose image is the straight segment between the
endpoint values, traversed weakly monotonically.  The docstrings name
the arc; that is the whole content of the model contract.

Two systematic augmentations make the discrete models realize the
convexity their continuous counterparts have (no sparse grid does on
its own):

* spheres with the height map get their latitude classes closed into
  rings (constant-height arcs) and consecutive classes linked once
  (monotone meridian arcs), so any two vertices are joined by a weakly
  height-monotone path of exactly the right length;
* the quadratic-map models get straight chords between sampled base
  points (linear interpolation of the squared-radius coordinates lifts
  to the ambient space and stays in the sampling region, which is
  convex), so segments of every slope are realized exactly.

Generators are pure given their parameters; output ordering is fixed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .gridsets import (
    GridSet,
    annulus_grid,
    notch_shape_grid,
    random_convex_polygon_grid,
)
from .space import EmbeddedSpace, VertexRecord

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


# -- icosphere base mesh ----------------------------------------------------

def _polar_icosahedron():
    """Icosahedron with vertices at the exact poles (0,0,+-1), so the
    height map's image spans exactly [-1, 1]."""
    verts = [np.array([0.0, 0.0, 1.0])]
    r, z = 2.0 / math.sqrt(5.0), 1.0 / math.sqrt(5.0)
    for k in range(5):
        a = 2.0 * math.pi * k / 5.0
        verts.append(np.array([r * math.cos(a), r * math.sin(a), z]))
    for k in range(5):
        a = 2.0 * math.pi * k / 5.0 + math.pi / 5.0
        verts.append(np.array([r * math.cos(a), r * math.sin(a), -z]))
    verts.append(np.array([0.0, 0.0, -1.0]))
    N, S = 0, 11
    U = list(range(1, 6))
    L = list(range(6, 11))
    faces = []
    for k in range(5):
        kn = (k + 1) % 5
        faces.append((N, U[k], U[kn]))
        faces.append((U[k], L[k], U[kn]))
        faces.append((U[kn], L[k], L[kn]))
        faces.append((S, L[kn], L[k]))
    return verts, faces


def _subdivide(verts, faces):
    verts = list(verts)
    cache: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in cache:
            m = verts[a] + verts[b]
            verts.append(m / np.linalg.norm(m))
            cache[key] = len(verts) - 1
        return cache[key]

    out = []
    for a, b, c in faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        out.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return verts, out


def build_icosphere(resolution: int):
    """Vertex positions (unit vectors) and undirected edge set."""
    if resolution < 0:
        raise ValueError("resolution must be >= 0")
    verts, faces = _polar_icosahedron()
    for _ in range(resolution):
        verts, faces = _subdivide(verts, faces)
    edges = set()
    for a, b, c in faces:
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((u, v) if u < v else (v, u))
    return verts, sorted(edges)


def _snap_values(values, gap: float = 1e-9):
    """Cluster scalars closer than ``gap`` onto one representative so
    analytically equal heights are bitwise equal."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    snapped = list(values)
    rep = None
    for i in order:
        if rep is None or values[i] - rep > gap:
            rep = values[i]
        snapped[i] = rep
    return snapped


def gen_sphere(resolution: int, map_kind: str = "height") -> EmbeddedSpace:
    """Subdivided icosahedral sphere mesh carrying either the height map
    (value x3, convex) or the equatorial projection ((x1, x2), not
    convex: interior fibers are antipodal vertex pairs).

    Height model arcs: mesh and ring edges ride latitude circles or any
    height-monotone curve; latitude classes are closed into rings and
    consecutive classes are linked once, so the set of weakly-monotone
    paths reaches every vertex pair exactly.

    Projection model arcs: an edge's chord in the equatorial disk lifts
    to the hemisphere of its endpoints (z = +-sqrt(1-|w|^2)); edges whose
    endpoints straddle the equator admit no such lift and are split at
    their z = 0 point on the rim.
    """
    if map_kind not in ("height", "projection"):
        raise ValueError(f"map_kind must be height|projection, got {map_kind!r}")
    positions, mesh_edges = build_icosphere(resolution)

    if map_kind == "height":
        heights = _snap_values([float(p[2]) for p in positions])
        vertices = [
            VertexRecord(i, (heights[i],),
                         labels=(f"xyz:{p[0]:.17g},{p[1]:.17g},{p[2]:.17g}",))
            for i, p in enumerate(positions)
        ]
        edges = set(mesh_edges)

        classes: dict[float, list[int]] = {}
        for i, h in enumerate(heights):
            classes.setdefault(h, []).append(i)

        def longitude(i: int) -> tuple:
            p = positions[i]
            return (math.atan2(p[1], p[0]), i)

        for h, members in classes.items():
            if len(members) < 2:
                continue
            ring = sorted(members, key=longitude)
            for a, b in zip(ring, ring[1:] + ring[:1]):
                if a != b:
                    key = (a, b) if a < b else (b, a)
                    edges.add(key)

        levels = sorted(classes)
        for lo, hi in zip(levels, levels[1:]):
            lo_set, hi_set = set(classes[lo]), set(classes[hi])
            if any((min(u, v), max(u, v)) in edges
                   for u in lo_set for v in hi_set):
                continue
            best = min(((float(np.linalg.norm(positions[u] - positions[v])), u, v)
                        for u in sorted(lo_set) for v in sorted(hi_set)))
            edges.add((min(best[1], best[2]), max(best[1], best[2])))

        return EmbeddedSpace(1, vertices, sorted(edges),
                             name=f"sphere_height_r{resolution}")

    # projection: split equator-straddling edges at their rim point
    positions = [np.array(p) for p in positions]
    edges = []
    extra_index: dict[tuple, int] = {}
    all_edges = list(mesh_edges)
    for u, v in all_edges:
        zu, zv = float(positions[u][2]), float(positions[v][2])
        if zu * zv >= 0.0:
            edges.append((u, v))
            continue
        t = zu / (zu - zv)
        p = positions[u] + t * (positions[v] - positions[u])
        p[2] = 0.0
        p = p / np.linalg.norm(p)
        key = (round(float(p[0]), 9), round(float(p[1]), 9))
        if key not in extra_index:
            positions.append(p)
            extra_index[key] = len(positions) - 1
        w = extra_index[key]
        edges.append((u, w))
        edges.append((w, v))

    vertices = [
        VertexRecord(i, (float(p[0]) + 0.0, float(p[1]) + 0.0),
                     labels=(f"xyz:{p[0]:.17g},{p[1]:.17g},{p[2]:.17g}",))
        for i, p in enumerate(positions)
    ]
    uniq = sorted(set((min(u, v), max(u, v)) for u, v in edges))
    return EmbeddedSpace(2, vertices, uniq,
                         name=f"sphere_projection_r{resolution}")


# -- quadratic moment-map models --------------------------------------------

def _simplex_points(n: int, resolution: int):
    """Lattice s-samples of the open corner simplex sum(s) < rho^2,
    returned as index tuples with sum < resolution."""
    return [k for k in itertools.product(range(resolution), repeat=n)
            if sum(k) < resolution]


def _torus_combos(n: int, circle_samples: int):
    return list(itertools.product(range(circle_samples), repeat=n))


def gen_weighted_moment(alphas, rho: float = 1.0, resolution: int = 5,
                        circle_samples: int = 4) -> EmbeddedSpace:
    """Quadratic map z -> sum |z_j|^2 alpha_j on the ball |z| < rho,
    sampled in squared-radius/phase coordinates.  Ground truth: convex,
    image the linear image of the corner simplex.

    Arcs: phase moves fix the value (fiber edges); any straight segment
    s(t) between sampled s-points stays in the simplex (convexity), so
    z_j(t) = sqrt(s_j(t)) e^{i theta_j(t)} realizes the image chord --
    hence chord edges between all base pairs at the zero-phase reps.
    When the weights are dependent, chords inside one level are zero
    length and double as fiber edges.
    """
    alphas = [tuple(float(x) for x in a) for a in alphas]
    if not alphas:
        raise ValueError("need at least one weight vector")
    ell = len(alphas[0])
    if ell < 1 or any(len(a) != ell for a in alphas):
        raise ValueError("weight vectors must share a positive dimension")
    if rho <= 0:
        raise ValueError("rho must be > 0")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if circle_samples < 4:
        raise ValueError("need at least 4 circle samples")

    n = len(alphas)
    step = rho * rho / resolution
    s_points = _simplex_points(n, resolution)
    combos = _torus_combos(n, circle_samples)
    n_combos = len(combos)
    alpha_mat = np.asarray(alphas, dtype=float)

    values = [tuple(float(x) + 0.0 for x in (np.asarray(k, float) * step) @ alpha_mat)
              for k in s_points]

    vertices = []
    for si, k in enumerate(s_points):
        s_label = "s:" + ",".join(str(x) for x in k)
        for ci, combo in enumerate(combos):
            vid = si * n_combos + ci
            labels = (s_label, "theta:" + ",".join(str(x) for x in combo))
            vertices.append(VertexRecord(vid, values[si], labels=labels))

    edges = set()
    combo_index = {c: i for i, c in enumerate(combos)}
    s_index = {k: i for i, k in enumerate(s_points)}

    def vid(si: int, ci: int) -> int:
        return si * n_combos + ci

    for si in range(len(s_points)):
        for ci, combo in enumerate(combos):
            # fiber edges: one phase steps by one sample
            for j in range(n):
                nxt = list(combo)
                nxt[j] = (nxt[j] + 1) % circle_samples
                cj = combo_index[tuple(nxt)]
                a, b = vid(si, ci), vid(si, cj)
                if a != b:
                    edges.add((min(a, b), max(a, b)))
    for k in s_points:
        si = s_index[k]
        for j in range(n):
            nxt = list(k)
            nxt[j] += 1
            nk = tuple(nxt)
            if nk in s_index:
                sj = s_index[nk]
                for ci in range(n_combos):
                    edges.add((min(vid(si, ci), vid(sj, ci)),
                               max(vid(si, ci), vid(sj, ci))))
    for si in range(len(s_points)):
        for sj in range(si + 1, len(s_points)):
            edges.add((vid(si, 0), vid(sj, 0)))

    name = f"weighted_moment_n{n}_l{ell}_r{resolution}"
    return EmbeddedSpace(ell, vertices, sorted(edges), name=name)


def gen_cn_moment(n: int, rho: float = 1.0, resolution: int = 5,
                  circle_samples: int = 4) -> EmbeddedSpace:
    """The coordinatewise squared-modulus map on the rho-ball: the
    weighted model with the standard basis (vertex-for-vertex equal)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    basis = [tuple(1.0 if j == i else 0.0 for j in range(n)) for i in range(n)]
    space = gen_weighted_moment(basis, rho=rho, resolution=resolution,
                                circle_samples=circle_samples)
    return EmbeddedSpace(n, [space.vertex(v) for v in space.vertex_ids()],
                         space.edges(), name=f"cn_moment_n{n}_r{resolution}",
                         tolerances=space.tolerances)


def gen_local_model(k: int, subtorus_weights, h0_dim: int, rho: float = 1.0,
                    resolution: int = 4, circle_samples: int = 4,
                    nu_extent: float = 1.0, nu_samples: int = 4) -> EmbeddedSpace:
    """Local normal-form model: value (sum |z_j|^2 alpha_j, nu) on
    (quotient torus) x C^n x R^{h0_dim}, with alpha_j the rows of
    ``subtorus_weights``.  The quotient is factored through the value
    map, so the model is the product of the weighted-moment sampling
    with a box grid in the nu block.  Ground truth: convex.

    Arcs: joint linear interpolation of (s, nu) stays in simplex x box
    (both convex) and lifts exactly as in the weighted model; residual
    torus directions enter as fiber circles.
    """
    weights = [tuple(float(x) for x in row) for row in subtorus_weights]
    n = len(weights)
    dim_h = k - h0_dim
    if h0_dim < 0 or dim_h < 0:
        raise ValueError("need 0 <= h0_dim <= k")
    if n and any(len(w) != dim_h for w in weights):
        raise ValueError(f"weight rows must have dimension {dim_h}")
    if n == 0 and dim_h > 0:
        raise ValueError("nonzero subtorus dimension needs weight rows")
    if h0_dim == 0:
        return gen_weighted_moment(weights, rho=rho, resolution=resolution,
                                   circle_samples=circle_samples)
    if nu_samples < 2:
        raise ValueError("nu_samples must be >= 2")

    nu_axis = [(-nu_extent + 2.0 * nu_extent * i / (nu_samples - 1)) + 0.0
               for i in range(nu_samples)]
    nu_points = list(itertools.product(nu_axis, repeat=h0_dim))

    if n == 0:
        # trivial subtorus: pure nu projection with one residual fiber circle
        vertices = []
        edges = set()
        m = circle_samples
        for pi, nu in enumerate(nu_points):
            for c in range(m):
                vid = pi * m + c
                labels = ("nu:" + ",".join(f"{x:.17g}" for x in nu),
                          f"torus:{c}",)
                vertices.append(VertexRecord(vid, tuple(nu), labels=labels))
        for pi in range(len(nu_points)):
            for c in range(m):
                edges.add((min(pi * m + c, pi * m + (c + 1) % m),
                           max(pi * m + c, pi * m + (c + 1) % m)))
        for pi in range(len(nu_points)):
            for pj in range(pi + 1, len(nu_points)):
                edges.add((pi * m, pj * m))
        return EmbeddedSpace(h0_dim, vertices, sorted(edges),
                             name=f"local_model_k{k}_h0{h0_dim}_trivial")

    base = gen_weighted_moment(weights, rho=rho, resolution=resolution,
                               circle_samples=circle_samples)
    base_ids = base.vertex_ids()
    nb = len(base_ids)
    vertices = []
    for pi, nu in enumerate(nu_points):
        nu_label = "nu:" + ",".join(f"{x:.17g}" for x in nu)
        for bi in base_ids:
            rec = base.vertex(bi)
            vertices.append(VertexRecord(pi * nb + bi, rec.psi + tuple(nu),
                                         labels=rec.labels + (nu_label,)))
    edges = set()
    for pi in range(len(nu_points)):
        off = pi * nb
        for u, v in base.edges():
            edges.add((off + u, off + v))
    # nu steps at fixed base point
    for bi in base_ids:
        for pi in range(len(nu_points) - 1):
            edges.add((pi * nb + bi, (pi + 1) * nb + bi))
    # joint chords between zero-phase reps of every (s, nu) pair; the
    # weighted layout places the zero-phase rep first in each block of
    # circle_samples**n consecutive ids
    stride = circle_samples ** n
    reps = [pi * nb + bi for pi in range(len(nu_points))
            for bi in base_ids if bi % stride == 0]
    for a, b in itertools.combinations(sorted(reps), 2):
        edges.add((a, b))
    return EmbeddedSpace(dim_h + h0_dim, vertices, sorted(edges),
                         name=f"local_model_k{k}_h0{h0_dim}_n{n}")


def parabola_value(x: float, y: float) -> float:
    """The plane map -y + sqrt(x^2 + y^2); zero exactly on the upper y-axis."""
    return -y + math.hypot(x, y)


def gen_parabola_map(extent: float = 2.0, resolution: int = 8) -> EmbeddedSpace:
    """Plane map -y + sqrt(x^2+y^2) sampled along its level curves: the
    zero level is the upper y-axis, positive levels are parabolas.
    Ground truth: convex (globally); restrictions to small domain balls
    around upper-y-axis points have disconnected fibers, which is what
    the vertex labels let tests reconstruct.

    Arcs: level polylines carry constant value; between any two points a
    gradient climb followed by a level slide is weakly monotone, so the
    column edges between consecutive levels are all lawful.
    """
    if extent <= 0:
        raise ValueError("extent must be > 0")
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    levels = [extent * i / resolution for i in range(resolution + 1)]
    cols = resolution + 1
    vertices = []
    edges = set()
    coords = []
    for li, alpha in enumerate(levels):
        value = (alpha + 0.0,)
        for j in range(cols):
            if li == 0:
                x, y = 0.0, extent * j / (cols - 1)
            else:
                x_max = min(extent, math.sqrt(2 * alpha * extent + alpha * alpha))
                x = x_max * (2.0 * j / (cols - 1) - 1.0)
                y = x * x / (2 * alpha) - alpha / 2
            vid = li * cols + j
            coords.append((x, y))
            vertices.append(VertexRecord(
                vid, value, labels=(f"xy:{x:.17g},{y:.17g}",)))
    for li in range(len(levels)):
        for j in range(cols - 1):
            edges.add((li * cols + j, li * cols + j + 1))
    for li in range(len(levels) - 1):
        for j in range(cols):
            edges.add((li * cols + j, (li + 1) * cols + j))
    return EmbeddedSpace(1, vertices, sorted(edges),
                         name=f"parabola_e{extent:g}_r{resolution}")


def gen_cylinder_map(t_extent: float = 1.5, resolution: int = 4,
                     circle_samples: int = 12) -> EmbeddedSpace:
    """Signed-polar map (t, theta) -> t e^{i theta} with the antipodal
    identification (t, theta) ~ (-t, theta + pi).

    On the literal product R x S^1 every nonzero value has a two-point
    fiber, so no model of it can be a convex map; the identified space
    carries the same image and the same local phenomenon (small
    neighborhoods of the zero section have bowtie images) while its
    fibers are points plus the zero circle.  Ground truth: convex.

    Arcs: rays of constant angle are monotone through the origin; the
    zero circle is one fiber ring; chords between vertices lift through
    polar coordinates whenever the image segment misses the origin, and
    through-origin segments are realized by two radial hops meeting at
    the shared zero vertex.
    """
    if t_extent <= 0:
        raise ValueError("t_extent must be > 0")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if circle_samples < 8 or circle_samples % 2:
        raise ValueError("circle_samples must be even and >= 8")

    m = circle_samples
    half = m // 2
    radii = [t_extent * i / resolution for i in range(1, resolution + 1)]
    cos = [math.cos(2 * math.pi * j / m) for j in range(m)]
    sin = [math.sin(2 * math.pi * j / m) for j in range(m)]

    vertices = []
    # zero ring first: quotient of the zero circle, half the samples
    for j in range(half):
        vertices.append(VertexRecord(j, (0.0, 0.0), labels=(f"t:0;theta:{j}",)))

    def ring_id(i: int, j: int) -> int:
        return half + i * m + j

    for i, r in enumerate(radii):
        for j in range(m):
            psi = (r * cos[j] + 0.0, r * sin[j] + 0.0)
            vertices.append(VertexRecord(ring_id(i, j), psi,
                                         labels=(f"t:{r:.17g};theta:{j}",)))

    edges = set()
    for j in range(half):
        edges.add((min(j, (j + 1) % half), max(j, (j + 1) % half)))
    for j in range(m):
        edges.add((j % half, ring_id(0, j)))
        for i in range(len(radii) - 1):
            edges.add((ring_id(i, j), ring_id(i + 1, j)))

    ids = range(len(vertices))
    psis = [vertices[v].psi for v in ids]

    def through_origin(a: int, b: int) -> bool:
        pa, pb = psis[a], psis[b]
        cross = pa[0] * pb[1] - pa[1] * pb[0]
        dot = pa[0] * pb[0] + pa[1] * pb[1]
        return abs(cross) <= 1e-12 and dot < 0.0

    for a in ids:
        for b in range(a + 1, len(vertices)):
            if not through_origin(a, b):
                edges.add((a, b))

    return EmbeddedSpace(2, vertices, sorted(edges),
                         name=f"cylinder_t{t_extent:g}_r{resolution}")


# -- openness radius for linear cone maps ------------------------------------

def cone_openness_epsilon(alphas) -> float:
    """Radius below which every cone point beta = sum s_j alpha_j with
    s >= 0 admits a re-expression of norm < 1: 0.99 times the smallest,
    over independent weight subsets J, of the least singular value of
    the column matrix A_J (equivalently 1 / ||inverse on span||)."""
    mat = np.asarray([list(a) for a in alphas], dtype=float).T
    if mat.size == 0:
        raise ValueError("need at least one weight vector")
    ell, n = mat.shape
    scale = float(np.abs(mat).max())
    if scale == 0.0:
        raise ValueError("all weight vectors are zero")
    best = math.inf
    for size in range(1, min(n, ell) + 1):
        for subset in itertools.combinations(range(n), size):
            sub = mat[:, subset]
            svals = np.linalg.svd(sub, compute_uv=False)
            if svals[-1] <= 1e-12 * scale:
                continue  # dependent columns: not an invertible restriction
            best = min(best, float(svals[-1]))
    if not math.isfinite(best):
        raise ValueError("no independent weight subset")
    return 0.99 * best


def reexpress_in_unit_ball(alphas, beta, tol: float = 1e-9):
    """Find s' >= 0 supported on an independent subset with
    A s' = beta and |s'| < 1, by solving every restricted system;
    None when no subset admits one.  This is the validation oracle for
    :func:`cone_openness_epsilon`."""
    mat = np.asarray([list(a) for a in alphas], dtype=float).T
    beta = np.asarray(beta, dtype=float)
    ell, n = mat.shape
    scale = max(1.0, float(np.abs(beta).max()))
    for size in range(1, min(n, ell) + 1):
        for subset in itertools.combinations(range(n), size):
            sub = mat[:, subset]
            svals = np.linalg.svd(sub, compute_uv=False)
            if svals[-1] <= 1e-12 * max(1.0, float(np.abs(sub).max())):
                continue
            sol, *_ = np.linalg.lstsq(sub, beta, rcond=None)
            if float(np.abs(sub @ sol - beta).max()) > tol * scale:
                continue
            if sol.min() < -tol or float(np.linalg.norm(sol)) >= 1.0:
                continue
            full = np.zeros(n)
            for k, j in enumerate(subset):
                full[j] = sol[k]
            return full
    return None


# -- generator registry -------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """Named generator + parameters, as accepted by the CLI."""

    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("sphere_height", "sphere_projection", "cn_moment",
             "weighted_moment", "local_model", "parabola_map",
             "cylinder_map", "grid_random")


def build_from_spec(spec: GeneratorSpec):
    """Returns (space-or-grid, ground-truth sidecar dict)."""
    kind, p = spec.kind, dict(spec.params)
    if kind == "sphere_height":
        space = gen_sphere(int(p.get("resolution", 2)), "height")
        truth = {"expected_verdict": "convex",
                 "expected_image_description": "interval [-1, 1] of heights"}
    elif kind == "sphere_projection":
        space = gen_sphere(int(p.get("resolution", 2)), "projection")
        truth = {"expected_verdict": "not_convex",
                 "expected_image_description":
                     "unit disk; interior fibers split into two sheets"}
    elif kind == "cn_moment":
        space = gen_cn_moment(int(p.get("n", 2)), float(p.get("rho", 1.0)),
                              int(p.get("resolution", 5)),
                              int(p.get("circle_samples", 4)))
        truth = {"expected_verdict": "convex",
                 "expected_image_description":
                     "corner simplex {s >= 0, sum s < rho^2}"}
    elif kind == "weighted_moment":
        alphas = p.get("alphas")
        if not alphas:
            raise ValueError("weighted_moment needs nonempty 'alphas'")
        space = gen_weighted_moment(alphas, float(p.get("rho", 1.0)),
                                    int(p.get("resolution", 5)),
                                    int(p.get("circle_samples", 4)))
        truth = {"expected_verdict": "convex",
                 "expected_image_description":
                     "linear image of the corner simplex under the weights"}
    elif kind == "local_model":
        space = gen_local_model(int(p.get("k", 2)),
                                p.get("subtorus_weights", [[2.0]]),
                                int(p.get("h0_dim", 1)),
                                float(p.get("rho", 1.0)),
                                int(p.get("resolution", 4)),
                                int(p.get("circle_samples", 4)),
                                float(p.get("nu_extent", 1.0)),
                                int(p.get("nu_samples", 4)))
        truth = {"expected_verdict": "convex",
                 "expected_image_description":
                     "weight cone image times a nu box"}
    elif kind == "parabola_map":
        space = gen_parabola_map(float(p.get("extent", 2.0)),
                                 int(p.get("resolution", 8)))
        truth = {"expected_verdict": "convex",
                 "expected_image_description": "interval [0, extent] of values"}
    elif kind == "cylinder_map":
        space = gen_cylinder_map(float(p.get("t_extent", 1.5)),
                                 int(p.get("resolution", 4)),
                                 int(p.get("circle_samples", 12)))
        truth = {"expected_verdict": "convex",
                 "expected_image_description": "disk of radius t_extent"}
    elif kind == "grid_random":
        shape = p.get("shape", "convex")
        seed = int(p.get("seed", 0))
        if shape == "convex":
            grid = random_convex_polygon_grid(seed,
                                              int(p.get("max_extent", 40)))
            verdict = "convex"
        elif shape in ("l", "u", "t"):
            grid = notch_shape_grid(seed, shape)
            verdict = "not_convex"
        elif shape == "annulus":
            grid = annulus_grid(seed)
            verdict = "not_convex"
        else:
            raise ValueError(f"unknown grid shape {shape!r}")
        truth = {"expected_verdict": verdict,
                 "expected_image_description": f"grid set ({shape})"}
        truth["generator"] = {"kind": kind, "params": p}
        return grid, truth
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    truth["generator"] = {"kind": kind, "params": p}
    return space, truth


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    spec: GeneratorSpec
    expected_verdict: str  # convex | not_convex


def default_gallery() -> list[GalleryEntry]:
    """Small, exhaustively verifiable instances of every example."""
    return [
        GalleryEntry("sphere_height_r1",
                     GeneratorSpec("sphere_height", {"resolution": 1}), "convex"),
        GalleryEntry("sphere_height_r2",
                     GeneratorSpec("sphere_height", {"resolution": 2}), "convex"),
        GalleryEntry("sphere_projection_r1",
                     GeneratorSpec("sphere_projection", {"resolution": 1}),
                     "not_convex"),
        GalleryEntry("cn_moment_n1",
                     GeneratorSpec("cn_moment",
                                   {"n": 1, "rho": 1.0, "resolution": 8,
                                    "circle_samples": 8}), "convex"),
        GalleryEntry("cn_moment_n2",
                     GeneratorSpec("cn_moment",
                                   {"n": 2, "rho": 1.0, "resolution": 5,
                                    "circle_samples": 4}), "convex"),
        GalleryEntry("weighted_pm1",
                     GeneratorSpec("weighted_moment",
                                   {"alphas": [[1.0], [-1.0]], "rho": 1.0,
                                    "resolution": 5, "circle_samples": 4}),
                     "convex"),
        GalleryEntry("weighted_cone",
                     GeneratorSpec("weighted_moment",
                                   {"alphas": [[1.0, 0.0], [1.0, 1.0]],
                                    "rho": 1.0, "resolution": 4,
                                    "circle_samples": 4}), "convex"),
        GalleryEntry("local_model_small",
                     GeneratorSpec("local_model",
                                   {"k": 2, "subtorus_weights": [[2.0]],
                                    "h0_dim": 1, "rho": 1.0, "resolution": 4,
                                    "circle_samples": 4, "nu_samples": 3}),
                     "convex"),
        GalleryEntry("parabola",
                     GeneratorSpec("parabola_map",
                                   {"extent": 2.0, "resolution": 8}), "convex"),
        GalleryEntry("cylinder",
                     GeneratorSpec("cylinder_map",
                                   {"t_extent": 1.5, "resolution": 4,
                                    "circle_samples": 12}), "convex"),
    ]
