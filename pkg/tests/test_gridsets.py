import math

import pytest

from convexmap.gridsets import (
    GridSet,
    LocalConvexityError,
    annulus_grid,
    grid_from_cells,
    grid_from_raster,
    grid_to_document,
    is_locally_convex,
    load_grid,
    notch_shape_grid,
    random_convex_polygon_grid,
    segment_inside_oracle,
    segments_inside_oracle,
    select_cell_pairs,
    tn_verdict,
    to_embedded_space,
    uniform_local_convexity_radius,
)
from convexmap.metric import psi_distance


def full_square(n, h=1.0):
    return grid_from_cells([(x, y) for x in range(n) for y in range(n)], h)


class TestToEmbeddedSpace:
    def test_strip_is_path_graph(self):
        g = grid_from_cells([(0, 0), (1, 0), (2, 0)], 0.5)
        s = to_embedded_space(g)
        assert s.edges() == [(0, 1), (1, 2)]
        assert [s.psi(v) for v in s.vertex_ids()] == \
            [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]

    def test_block_has_both_diagonals(self):
        g = grid_from_cells([(0, 0), (1, 0), (0, 1), (1, 1)])
        s = to_embedded_space(g)
        assert len(s.edges()) == 6  # 4 axis + 2 diagonal

    def test_l_shape_excludes_corner_diagonal(self):
        g = grid_from_cells([(0, 0), (1, 0), (0, 1)])
        s = to_embedded_space(g)
        # cells sort to (0,0)=0, (0,1)=1, (1,0)=2; no (1)-(2) diagonal
        assert s.edges() == [(0, 1), (0, 2)]

    def test_3d_diagonals_need_all_corners(self):
        cube = grid_from_cells([(x, y, z) for x in range(2)
                                for y in range(2) for z in range(2)])
        s = to_embedded_space(cube)
        # 12 axis + 12 face diagonals + 4 body diagonals
        assert len(s.edges()) == 28

    def test_metric_dominates_euclidean(self):
        g = full_square(6)
        s = to_embedded_space(g)
        cells = g.sorted_cells()
        for i, j in [(0, 35), (3, 20), (5, 30)]:
            d = psi_distance(s, i, j)
            a, b = cells[i], cells[j]
            assert d >= math.dist(a, b) - 1e-12


class TestSegmentOracle:
    def test_adjacent_cells(self):
        g = full_square(3)
        assert segment_inside_oracle(g, (0, 0), (1, 0))

    def test_full_square_corners(self):
        g = full_square(8)
        assert segment_inside_oracle(g, (0, 0), (7, 7))
        assert segment_inside_oracle(g, (0, 7), (7, 0))

    def test_long_l_across_notch(self):
        cells = [(x, 0) for x in range(8)] + [(0, y) for y in range(1, 8)]
        g = grid_from_cells(cells)
        assert not segment_inside_oracle(g, (7, 0), (0, 7))

    def test_endpoints_must_be_cells(self):
        g = full_square(2)
        with pytest.raises(ValueError):
            segment_inside_oracle(g, (0, 0), (9, 9))

    def test_batched_matches_single(self):
        g = notch_shape_grid(3, "l")
        cells = g.sorted_cells()
        pairs = select_cell_pairs(len(cells), 60, 5)[:60]
        batched = segments_inside_oracle(
            g, [(cells[i], cells[j]) for i, j in pairs])
        for k, (i, j) in enumerate(pairs):
            assert bool(batched[k]) == segment_inside_oracle(g, cells[i], cells[j])


class TestLocalConvexity:
    def test_full_square_any_delta(self):
        g = full_square(10)
        for delta in (1.0, 2.0, 4.0, 8.0):
            assert is_locally_convex(g, delta).ok

    def test_l_shape_corner_witness(self):
        g = grid_from_cells([(x, 0) for x in range(6)] +
                            [(0, y) for y in range(1, 6)])
        r = is_locally_convex(g, 2.0)
        assert not r.ok
        assert (1, 1) in r.witness["missing_cells"]

    def test_disjoint_blocks_locally_convex(self):
        cells = [(x, y) for x in range(3) for y in range(3)]
        cells += [(x + 9, y) for x in range(3) for y in range(3)]
        g = grid_from_cells(cells)
        assert is_locally_convex(g, 2.0).ok
        # but the set is disconnected: connectivity is a separate hypothesis
        assert len(to_embedded_space(g).connected_components()) == 2

    def test_monotone_decreasing_in_delta(self):
        g = random_convex_polygon_grid(2, max_extent=20)
        assert is_locally_convex(g, 4.0).ok
        assert is_locally_convex(g, 2.0).ok
        assert is_locally_convex(g, 1.0).ok

    def test_region_restricted(self):
        g = grid_from_cells([(x, 0) for x in range(6)] +
                            [(0, y) for y in range(1, 6)])
        # far end of one arm is locally fine even though the corner fails
        far = [(5, 0), (4, 0)]
        assert is_locally_convex(g, 1.0, region=far).ok


class TestUniformRadius:
    def test_full_square_reaches_cap(self):
        g = full_square(10)
        # dyadic ladder capped by the bbox diagonal
        assert uniform_local_convexity_radius(g) == 16.0

    def test_convex_raster_radius_reverifies(self):
        g = random_convex_polygon_grid(5, max_extent=24)
        r = uniform_local_convexity_radius(g, cap=4.0)
        assert r >= 1.0
        assert is_locally_convex(g, r).ok

    def test_l_shape_error_with_witness(self):
        g = grid_from_cells([(x, 0) for x in range(6)] +
                            [(0, y) for y in range(1, 6)])
        with pytest.raises(LocalConvexityError) as err:
            uniform_local_convexity_radius(g)
        assert err.value.witness["missing_cells"]


class TestTnVerdict:
    def test_square_convex(self):
        verdict, hyp = tn_verdict(full_square(20))
        assert verdict.status == "Convex"
        assert hyp["connected"] and hyp["locally_convex"]

    def test_rasterized_disk_convex(self):
        # digital convexification of the radius-10 disk; the bare
        # center-in raster provably fails the oracle near tangent chords
        # (e.g. the (8,6)-(10,0) chord passes (9.7, 0.9), whose only
        # half-cell neighbor (10,1) has its center outside the disk)
        from convexmap.gridsets import digital_convex_closure

        raw = {(x, y) for x in range(-10, 11) for y in range(-10, 11)
               if math.hypot(x, y) <= 10.0}
        raw_verdict, _ = tn_verdict(grid_from_cells(raw))
        assert raw_verdict.status == "NotConvex"
        closed = digital_convex_closure(raw)
        verdict, hyp = tn_verdict(grid_from_cells(closed))
        assert verdict.status == "Convex"
        assert hyp["locally_convex"]

    def test_l_shape_everything_fails(self):
        g = notch_shape_grid(0, "l")
        verdict, hyp = tn_verdict(g)
        assert verdict.status == "NotConvex"
        assert not hyp["locally_convex"]
        w = verdict.witnesses[0].data
        assert not (w["metric_ok"] and w["segment_ok"])

    def test_annulus_not_convex(self):
        verdict, hyp = tn_verdict(annulus_grid(1))
        assert verdict.status == "NotConvex"

    def test_verdict_matches_oracle_small(self):
        # on exhaustive-size sets the equivalence is exact by construction
        for g in (full_square(8), notch_shape_grid(4, "u")):
            verdict, _ = tn_verdict(g)
            cells = g.sorted_cells()
            pairs = select_cell_pairs(len(cells), 500, 0)
            oracle = bool(segments_inside_oracle(
                g, [(cells[i], cells[j]) for i, j in pairs]).all())
            assert verdict.is_convex == oracle


class TestDocuments:
    def test_grid_roundtrip(self):
        g = notch_shape_grid(7, "t")
        doc = grid_to_document(g)
        again = load_grid(doc)
        assert again.cells == g.cells
        assert again.spacing == g.spacing

    def test_pbm_import(self):
        text = "P1\n3 2\n1 0 1\n1 1 1\n"
        g = grid_from_raster(text)
        assert g.cells == frozenset([(0, 0), (2, 0), (0, 1), (1, 1), (2, 1)])

    def test_bare_raster_import(self):
        g = grid_from_raster("11\n01\n")
        assert g.cells == frozenset([(0, 0), (1, 0), (1, 1)])

    def test_bad_document(self):
        with pytest.raises(ValueError):
            load_grid({"format": "grid", "dimension": 2})


class TestGenerators:
    def test_convex_generator_deterministic(self):
        assert random_convex_polygon_grid(11).cells == \
            random_convex_polygon_grid(11).cells

    def test_notch_shapes_have_concavity(self):
        for kind in ("l", "u", "t"):
            g = notch_shape_grid(2, kind)
            with pytest.raises(LocalConvexityError):
                uniform_local_convexity_radius(g)

    def test_grid_dimension_bounds(self):
        with pytest.raises(ValueError):
            GridSet(4, 1.0, frozenset([(0, 0, 0, 0)]))
        with pytest.raises(ValueError):
            GridSet(2, 1.0, frozenset())
