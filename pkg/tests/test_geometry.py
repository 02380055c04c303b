import math

import pytest
from hypothesis import given, strategies as st

from convexmap.geometry import (
    DimensionMismatchError,
    Tolerances,
    are_collinear_midpoint,
    convex_hull,
    hull_contains,
    is_monotone_straight,
    path_length,
    straight_length_bound,
)

TOL = Tolerances()


class TestPathLength:
    def test_single_point(self):
        assert path_length([(0.0, 0.0)]) == 0.0

    def test_pythagorean(self):
        assert path_length([(0, 0), (3, 4)]) == pytest.approx(5.0, abs=0)

    def test_back_and_forth_doubles(self):
        assert path_length([(0, 0), (1, 0), (0, 0)]) == pytest.approx(2.0, abs=0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            path_length([])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            path_length([(0, 0), (1, 0, 0)])

    @given(st.lists(st.tuples(st.floats(-100, 100), st.floats(-100, 100)),
                    min_size=1, max_size=12))
    def test_reversal_invariant(self, pts):
        assert path_length(pts) == pytest.approx(path_length(pts[::-1]), rel=1e-12)


class TestMonotoneStraight:
    def test_constant_path(self):
        assert is_monotone_straight([(1, 2), (1, 2), (1, 2)], TOL)

    def test_weakly_monotone_segment(self):
        assert is_monotone_straight([(0, 0), (0.3, 0), (1, 0)], TOL)

    def test_backtracking_fails(self):
        # length 1.5 exceeds the endpoint gap 0.5: frozen from the length sums
        assert not is_monotone_straight([(0, 0), (1, 0), (0.5, 0)], TOL)

    def test_single_point_is_straight(self):
        assert is_monotone_straight([(7.0,)], TOL)

    @given(st.lists(st.floats(0, 1), min_size=2, max_size=8))
    def test_sorted_parameters_on_a_segment(self, ts):
        a, b = (1.0, -2.0), (4.0, 2.0)
        pts = [(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
               for t in sorted(ts)]
        assert is_monotone_straight(pts, TOL)

    def test_subpaths_of_straight_are_straight(self):
        pts = [(t, 2 * t) for t in (0.0, 0.1, 0.4, 0.75, 1.0)]
        assert is_monotone_straight(pts, TOL)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts) + 1):
                if j - i >= 1:
                    assert is_monotone_straight(pts[i:j], TOL)

    def test_concatenation_same_line_same_direction(self):
        first = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]
        second = [(2.0, 2.0), (2.5, 2.5), (4.0, 4.0)]
        assert is_monotone_straight(first + second[1:], TOL)

    def test_length_bound_separates(self):
        # any curve longer than the bound must fail the predicate
        gap = 0.5
        bound = straight_length_bound(gap, TOL)
        assert bound >= gap
        assert 1.5 > bound  # the backtracking example above


class TestCollinearMidpoint:
    @pytest.mark.parametrize("a,b,c,expected", [
        ((0, 0), (1, 0), (2, 0), True),
        ((0, 0), (0, 1), (2, 0), False),
        ((0, 0), (1, 1), (2, 2), True),
    ])
    def test_examples(self, a, b, c, expected):
        assert are_collinear_midpoint(a, b, c, TOL) is expected

    @given(st.floats(-50, 50), st.floats(-50, 50),
           st.floats(-50, 50), st.floats(-50, 50))
    def test_collinear_implies_straight(self, ax, ay, cx, cy):
        a, c = (ax, ay), (cx, cy)
        b = ((ax + cx) / 2, (ay + cy) / 2)
        assert are_collinear_midpoint(a, b, c, TOL)
        assert is_monotone_straight([a, b, c], TOL)


class TestConvexHull:
    def test_triangle_three_halfspaces(self):
        h = convex_hull([(0, 0), (1, 0), (0, 1)])
        assert len(h.normals) == 3

    def test_interval_in_r1(self):
        h = convex_hull([(0.0,), (1.0,)])
        assert hull_contains(h, (0.5,), TOL)
        assert not hull_contains(h, (1.1,), TOL)
        assert not hull_contains(h, (-0.1,), TOL)

    def test_collinear_degenerate_segment(self):
        h = convex_hull([(0, 0), (1, 0), (2, 0)])
        assert hull_contains(h, (1.5, 0.0), TOL)
        assert not hull_contains(h, (1.5, 0.5), TOL)
        assert not hull_contains(h, (2.5, 0.0), TOL)

    def test_single_point(self):
        h = convex_hull([(2.0, 3.0)])
        assert hull_contains(h, (2.0, 3.0), TOL)
        assert not hull_contains(h, (2.0, 3.1), TOL)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            convex_hull([])

    def test_unit_square_membership(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        h = convex_hull(square)
        assert hull_contains(h, (0.5, 0.5), TOL)
        assert not hull_contains(h, (1 + 2 * TOL.eta_hull, 0.0), TOL)

    def test_3d_hull(self):
        pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        h = convex_hull(pts)
        assert hull_contains(h, (0.2, 0.2, 0.2), TOL)
        assert not hull_contains(h, (0.5, 0.5, 0.5), TOL)

    @given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
                    min_size=1, max_size=20))
    def test_inputs_are_members(self, pts):
        h = convex_hull(pts)
        zero_tol = Tolerances(eta_hull=0.0)
        for p in pts:
            assert hull_contains(h, p, zero_tol)

    def test_intersection_of_hulls(self):
        a = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)])
        b = convex_hull([(1, 1), (3, 1), (3, 3), (1, 3)])
        both = a.intersect(b)
        assert hull_contains(both, (1.5, 1.5), TOL)
        assert not hull_contains(both, (0.5, 0.5), TOL)
        assert not hull_contains(both, (2.5, 2.5), TOL)


def test_tolerances_validate():
    with pytest.raises(ValueError):
        Tolerances(eta_collinear=-1.0)
