from fractions import Fraction

from khlee.geometry import (nesting_and_ccw, point_in_polygon, pt,
                            segments_intersect, signed_area2)


def square(x0, y0, side):
    return [pt(x0, y0), pt(x0 + side, y0), pt(x0 + side, y0 + side), pt(x0, y0 + side)]


def test_signed_area_orientation():
    assert signed_area2(square(0, 0, 2)) > 0  # counterclockwise
    assert signed_area2(list(reversed(square(0, 0, 2)))) < 0


def test_point_in_polygon():
    sq = square(0, 0, 4)
    assert point_in_polygon(pt(1, 1), sq)
    assert not point_in_polygon(pt(5, 1), sq)
    assert not point_in_polygon(pt(-1, -1), sq)


def test_nesting_and_ccw():
    outer = square(0, 0, 10)
    inner = square(2, 2, 2)
    beside = square(20, 0, 3)
    depths, ccw = nesting_and_ccw([outer, inner, beside])
    assert depths == [0, 1, 0]
    assert ccw == [True, True, True]


def test_segments_intersect_exactness():
    a, b = pt(0, 0), pt(4, 4)
    c, d = pt(0, 4), pt(4, 0)
    assert segments_intersect(a, b, c, d)
    assert not segments_intersect(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1))
    # touching at an endpoint counts as intersecting
    assert segments_intersect(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0))
    # tiny rational separations stay exact
    e = Fraction(1, 10**12)
    assert not segments_intersect(pt(0, 0), pt(1, 0), (Fraction(0), e), (Fraction(1), e))
