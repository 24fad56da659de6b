from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmann.core import (
    KindError,
    Line,
    Point,
    ZERO_LINE,
    ZERO_POINT,
    bracket,
    canonicalize,
    incidence,
    join,
    kind_of,
    meet,
    product,
    projectively_equal,
    scalar_equiv,
    scale,
)

coord = st.integers(min_value=-40, max_value=40)


def nonzero_triples(cls):
    return st.tuples(coord, coord, coord).filter(lambda t: any(t)).map(lambda t: cls(*t))


points = nonzero_triples(Point)
lines = nonzero_triples(Line)


class TestMeetJoin:
    def test_axes_meet(self):
        assert projectively_equal(meet(Line(1, 0, 0), Line(0, 1, 0)), Point(0, 0, 1))

    def test_meet_of_line_with_itself_is_zero_point(self):
        L = Line(3, -2, 5)
        assert meet(L, L) == ZERO_POINT

    def test_meet_cross_product_value(self):
        assert meet(Line(1, 1, 1), Line(1, 2, 3)) == Point(1, -2, 1)

    def test_join_through_basis_points(self):
        assert projectively_equal(join(Point(1, 0, 0), Point(0, 1, 0)), Line(0, 0, 1))

    def test_join_of_point_with_itself_is_zero_line(self):
        p = Point(2, 3, -1)
        assert join(p, p) == ZERO_LINE

    def test_join_cross_product_value(self):
        assert join(Point(1, 1, 1), Point(1, 2, 3)) == Line(1, -2, 1)

    @given(p=points, q=points)
    @settings(max_examples=150)
    def test_join_contains_both_points(self, p, q):
        L = join(p, q)
        assert incidence(L, p) == 0
        assert incidence(L, q) == 0

    @given(L=lines, M=lines)
    @settings(max_examples=150)
    def test_meet_antisymmetric_up_to_class(self, L, M):
        a, b = meet(L, M), meet(M, L)
        assert projectively_equal(a, b) or (a.is_zero and b.is_zero)

    @given(p=points, q=points)
    @settings(max_examples=150)
    def test_duality_same_coordinates(self, p, q):
        as_line = join(p, q)
        as_point = meet(Line(*p.coords), Line(*q.coords))
        assert as_line.coords == as_point.coords


class TestIncidenceBracket:
    def test_incidence_examples(self):
        assert incidence(Line(0, 0, 1), Point(1, 0, 0)) == 0
        assert incidence(Line(0, 0, 1), Point(0, 0, 1)) == 1
        assert incidence(Line(1, 1, 1), Point(1, 2, -3)) == 0

    def test_incidence_is_symmetric_in_argument_order(self):
        L, p = Line(2, -1, 3), Point(1, 1, 5)
        assert incidence(L, p) == incidence(p, L)

    def test_bracket_unit_triangle_nonzero(self):
        assert bracket(Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)) != 0

    def test_bracket_repeated_factor_zero(self):
        p, q = Point(1, 2, 3), Point(4, 5, 6)
        assert bracket(p, p, q) == 0

    def test_bracket_collinear_zero(self):
        assert bracket(Point(1, 0, 0), Point(0, 1, 0), Point(1, 1, 0)) == 0

    def test_bracket_kind_mismatch(self):
        with pytest.raises(KindError):
            bracket(Point(1, 0, 0), Line(0, 1, 0), Point(0, 0, 1))

    @given(a=points, b=points, c=points)
    @settings(max_examples=150)
    def test_bracket_permutation_classes_agree(self, a, b, c):
        base = bracket(a, b, c)
        for perm in ((a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            assert scalar_equiv(bracket(*perm), base)

    @given(a=points, b=points, c=points, d=points)
    @settings(max_examples=200)
    def test_meet_of_joins_expansion_identity(self, a, b, c, d):
        # (ab)(cd) equals (a.b.d)c - (a.b.c)d coordinate for coordinate
        lhs = meet(join(a, b), join(c, d))
        sd = bracket(a, b, d)
        sc = bracket(a, b, c)
        rhs = tuple(sd * cc - sc * dc for cc, dc in zip(c.coords, d.coords))
        assert lhs.coords == rhs


class TestScaleProduct:
    def test_scale_zero_gives_zero_object(self):
        assert scale(0, Point(1, 2, 3)) == ZERO_POINT
        assert scale(0, Line(1, 2, 3)) == ZERO_LINE

    def test_scale_two(self):
        assert scale(2, Point(1, 1, 1)) == Point(2, 2, 2)
        assert projectively_equal(scale(2, Point(1, 1, 1)), Point(1, 1, 1))

    def test_scale_negative_fraction_keeps_class(self):
        L = Line(3, -6, 9)
        assert projectively_equal(scale(Fraction(-1, 3), L), L)

    def test_product_dispatch(self):
        p, q = Point(1, 2, 3), Point(0, 1, 1)
        L, M = Line(1, 0, 2), Line(0, 3, 1)
        assert product(p, q) == join(p, q)
        assert product(L, M) == meet(L, M)
        assert product(L, p) == incidence(L, p)
        assert product(p, L) == incidence(L, p)
        assert product(Fraction(2), p) == scale(2, p)

    def test_product_join_then_point_is_bracket(self):
        p, q, r = Point(1, 2, 3), Point(0, 1, 1), Point(2, 0, 5)
        assert product(join(p, q), r) == bracket(p, q, r)

    def test_scalar_scalar_is_kind_error(self):
        with pytest.raises(KindError):
            product(Fraction(1), Fraction(2))


class TestProjectiveEquality:
    def test_scaled_triple_equal(self):
        assert projectively_equal(Point(1, 2, 3), Point(2, 4, 6))

    def test_different_triples_not_equal(self):
        assert not projectively_equal(Point(1, 2, 3), Point(1, 2, 4))

    def test_zero_point_only_equal_to_itself(self):
        assert not projectively_equal(ZERO_POINT, Point(1, 0, 0))
        assert projectively_equal(ZERO_POINT, ZERO_POINT)

    def test_kind_mismatch(self):
        with pytest.raises(KindError):
            projectively_equal(Point(1, 0, 0), Line(1, 0, 0))

    def test_scalar_classes(self):
        assert projectively_equal(Fraction(3), Fraction(-7, 2))
        assert not projectively_equal(Fraction(3), Fraction(0))


class TestCanonicalize:
    def test_reduces_and_fixes_sign(self):
        assert canonicalize(Point(Fraction(-2, 3), Fraction(4, 3), Fraction(-2))) == Point(1, -2, 3)

    def test_keeps_class(self):
        p = Point(Fraction(7, 5), Fraction(-14, 10), Fraction(21))
        assert projectively_equal(canonicalize(p), p)

    def test_zero_object_passthrough(self):
        assert canonicalize(ZERO_LINE) == ZERO_LINE

    def test_kinds(self):
        assert kind_of(canonicalize(Line(2, 4, 8))) == "line"
