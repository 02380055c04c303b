import json

import pytest

from convexmap.geometry import Tolerances, convex_hull
from convexmap.space import (
    EmbeddedSpace,
    SpaceValidationError,
    VertexRecord,
    fiber_components,
    induced_subspace,
    is_connected,
    load_space,
    neighborhood_component,
    saturation_epsilon,
    space_to_document,
    subspace_from_vertices,
)

from conftest import line_space, make_space


def doc(dimension, vertices, edges, name="t"):
    return {"format": "space", "name": name, "dimension": dimension,
            "vertices": vertices, "edges": edges}


class TestLoadSpace:
    def test_minimal(self):
        s = load_space(doc(1, [{"id": 0, "psi": [0.0]},
                              {"id": 1, "psi": [1.0]}], [[0, 1]]))
        assert len(s) == 2
        assert s.dimension == 1
        assert s.edges() == [(0, 1)]

    def test_dangling_edge(self):
        with pytest.raises(SpaceValidationError, match="unknown vertex"):
            load_space(doc(1, [{"id": 0, "psi": [0.0]}], [[0, 99]]))

    def test_dimension_mismatch(self):
        with pytest.raises(SpaceValidationError, match="dimension"):
            load_space(doc(3, [{"id": 0, "psi": [0.0, 1.0]}], []))

    def test_duplicate_vertex(self):
        with pytest.raises(SpaceValidationError, match="duplicate"):
            load_space(doc(1, [{"id": 0, "psi": [0.0]},
                               {"id": 0, "psi": [1.0]}], []))

    def test_duplicate_edge(self):
        with pytest.raises(SpaceValidationError, match="duplicate edge"):
            load_space(doc(1, [{"id": 0, "psi": [0.0]},
                               {"id": 1, "psi": [1.0]}], [[0, 1], [1, 0]]))

    def test_roundtrip(self):
        s = line_space([0.0, 0.5, 2.0])
        again = load_space(space_to_document(s))
        assert space_to_document(again) == space_to_document(s)

    def test_json_roundtrip_preserves_floats(self):
        s = line_space([0.1, 1.0 / 3.0, 2.0 ** -30])
        text = json.dumps(space_to_document(s))
        again = load_space(json.loads(text))
        for v in s.vertex_ids():
            assert again.psi(v) == s.psi(v)


class TestConnectivity:
    def test_path_graph(self):
        assert is_connected(line_space([0, 1, 2]))

    def test_two_isolated_vertices(self):
        s = make_space(1, [(0.0,), (1.0,)], [])
        assert not is_connected(s)

    def test_single_vertex(self):
        assert is_connected(make_space(1, [(0.0,)], []))


class TestFiberComponents:
    def test_path_graph_exact_fiber(self):
        s = line_space([0.0, 1.0, 2.0])
        comps = fiber_components(s, (1.0,), 0.0)
        assert [c.sorted_members() for c in comps] == [[1]]

    def test_far_level_empty(self):
        s = line_space([0.0, 1.0, 2.0])
        assert fiber_components(s, (50.0,), 0.0) == []

    def test_partition_property(self):
        s = make_space(1, [(0.0,), (0.0,), (1.0,)], [(0, 2), (1, 2)])
        comps = fiber_components(s, (0.0,), 0.0)
        # two vertices at the level, joined only through a vertex outside
        # the fiber: two components
        assert len(comps) == 2
        members = sorted(m for c in comps for m in c.sorted_members())
        assert members == [0, 1]

    def test_ball_is_strict(self):
        s = line_space([0.0, 1.0, 2.0])
        comps = fiber_components(s, (0.0,), 1.0)
        assert [c.sorted_members() for c in comps] == [[0]]

    def test_monotone_in_eps(self):
        s = line_space([0.0, 1.0, 2.0, 3.0])
        small = neighborhood_component(s, 1, 1.5)
        large = neighborhood_component(s, 1, 2.5)
        assert small.member_vertex_ids <= large.member_vertex_ids


class TestNeighborhoodComponent:
    def test_whole_ball_connected(self):
        s = line_space([0.0, 1.0, 2.0])
        comp = neighborhood_component(s, 1, 1.5)
        assert comp.sorted_members() == [0, 1, 2]

    def test_small_ball_single(self):
        s = line_space([0.0, 1.0, 2.0])
        comp = neighborhood_component(s, 1, 0.5)
        assert comp.sorted_members() == [1]

    def test_requires_positive_eps(self):
        s = line_space([0.0, 1.0])
        with pytest.raises(ValueError):
            neighborhood_component(s, 0, 0.0)


class TestInducedSubspace:
    def test_halfspace_restriction(self):
        s = line_space([0.0, 1.0, 2.0, 3.0])
        h = convex_hull([(0.0,), (1.5,)])
        sub = induced_subspace(s, h)
        assert sub.vertex_ids() == (0, 1)
        assert sub.edges() == [(0, 1)]

    def test_identity_restriction(self):
        s = line_space([0.0, 1.0, 2.0])
        h = convex_hull([(-1.0,), (5.0,)])
        sub = induced_subspace(s, h)
        assert sub.vertex_ids() == s.vertex_ids()
        assert sub.edges() == s.edges()

    def test_empty_restriction(self):
        s = line_space([0.0, 1.0])
        h = convex_hull([(10.0,), (11.0,)])
        assert len(induced_subspace(s, h)) == 0

    def test_idempotent_and_commutes_with_intersection(self):
        s = line_space([0.0, 1.0, 2.0, 3.0, 4.0])
        h1 = convex_hull([(0.0,), (3.2,)])
        h2 = convex_hull([(1.0,), (9.0,)])
        once = induced_subspace(s, h1)
        assert induced_subspace(once, h1).vertex_ids() == once.vertex_ids()
        seq = induced_subspace(once, h2)
        joint = induced_subspace(s, h1.intersect(h2))
        assert seq.vertex_ids() == joint.vertex_ids()
        assert seq.edges() == joint.edges()


class TestSaturationEpsilon:
    def test_path_graph(self):
        s = line_space([0.0, 1.0, 2.0])
        eps = saturation_epsilon(s, (0.0,), {0, 1})
        # nearest outside vertex is at distance 2, minus the zero slack
        assert eps == pytest.approx(2.0 - s.tolerances.eta_zero, abs=1e-15)

    def test_everything_included(self):
        s = line_space([0.0, 1.0, 2.0])
        assert saturation_epsilon(s, (0.0,), {0, 1, 2}) is None

    def test_missing_fiber_vertex(self):
        s = line_space([0.0, 1.0, 2.0])
        with pytest.raises(ValueError, match="fiber"):
            saturation_epsilon(s, (0.0,), {1, 2})

    def test_ball_below_epsilon_stays_inside(self):
        s = line_space([0.0, 1.0, 2.0])
        eps = saturation_epsilon(s, (0.0,), {0, 1})
        from convexmap.space import ball_preimage
        for frac in (0.25, 0.5, 0.99):
            inside = ball_preimage(s, (0.0,), frac * eps)
            assert set(inside) <= {0, 1}


def test_subspace_keeps_tolerances():
    s = EmbeddedSpace(1, [VertexRecord(0, (0.0,)), VertexRecord(1, (1.0,))],
                      [(0, 1)], tolerances=Tolerances(eps_fiber=0.123))
    sub = subspace_from_vertices(s, [0, 1], "sub")
    assert sub.tolerances.eps_fiber == 0.123
