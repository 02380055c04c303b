"""Shared fixtures and small space builders used across the suite."""

from __future__ import annotations

import math
import random

import pytest

from convexmap.space import EmbeddedSpace, VertexRecord
import convexmap.gallery as gallery


def make_space(dimension, psi_values, edges, name="test"):
    vertices = [VertexRecord(i, tuple(float(x) for x in psi))
                for i, psi in enumerate(psi_values)]
    return EmbeddedSpace(dimension, vertices, edges, name=name)


def line_space(values):
    """Path graph 0-1-2-... with 1-d psi values."""
    return make_space(1, [(v,) for v in values],
                      [(i, i + 1) for i in range(len(values) - 1)],
                      name="line")


def octahedron_projection():
    """Octahedron with the equatorial projection: poles share the value
    (0,0) but are not joined inside the fiber -- the minimal genuinely
    non-convex map."""
    psis = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0),
            (0.0, 0.0)]
    # 0 = north, 5 = south, 1..4 equator ring
    edges = [(0, i) for i in (1, 2, 3, 4)] + [(5, i) for i in (1, 2, 3, 4)] + \
        [(1, 2), (2, 3), (3, 4), (4, 1)]
    return make_space(2, psis, edges, name="octahedron_projection")


def annulus_space(samples=24, radii=(1.0, 1.5, 2.0)):
    """Identity map on rings: image is an annulus, so pair midpoints near
    the origin sit far from every image point."""
    psis = []
    for r in radii:
        for k in range(samples):
            a = 2 * math.pi * k / samples
            psis.append((r * math.cos(a), r * math.sin(a)))
    edges = []
    for ri in range(len(radii)):
        base = ri * samples
        for k in range(samples):
            edges.append((base + k, base + (k + 1) % samples))
            if ri + 1 < len(radii):
                edges.append((base + k, base + samples + k))
    return make_space(2, psis, edges, name="annulus")


def random_connected_space(seed, max_vertices=100, dim=None):
    """Seeded random connected space: a spanning tree plus extra edges,
    vertices at uniform random image positions."""
    rng = random.Random(seed)
    n = rng.randint(5, max_vertices)
    d = dim if dim is not None else rng.randint(1, 3)
    psis = [tuple(rng.uniform(-5, 5) for _ in range(d)) for _ in range(n)]
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for _ in range(n // 2):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return make_space(d, psis, sorted(edges), name=f"random{seed}")


@pytest.fixture(scope="session")
def sphere_height_r1():
    return gallery.gen_sphere(1, "height")


@pytest.fixture(scope="session")
def sphere_height_r2():
    return gallery.gen_sphere(2, "height")


@pytest.fixture(scope="session")
def sphere_height_r3():
    return gallery.gen_sphere(3, "height")


@pytest.fixture(scope="session")
def sphere_projection_r1():
    return gallery.gen_sphere(1, "projection")


@pytest.fixture(scope="session")
def sphere_projection_r3():
    return gallery.gen_sphere(3, "projection")


@pytest.fixture(scope="session")
def built_gallery():
    """Every default gallery space, built once."""
    return [(entry, gallery.build_from_spec(entry.spec)[0])
            for entry in gallery.default_gallery()]
