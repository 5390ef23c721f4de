"""Exact rational planar geometry for diagram layouts.

Points are (Fraction, Fraction) pairs.  Resolution circles are closed
polylines; nesting numbers and winding orientations are computed here with no
floating point.
"""

from __future__ import annotations

from fractions import Fraction

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """z-component of (a-o) x (b-o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def signed_area2(poly: list[Point]) -> Fraction:
    """Twice the signed area of a closed polygon (last vertex joins first)."""
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def point_in_polygon(p: Point, poly: list[Point]) -> bool:
    """Even-odd test; the point must not lie on the polygon boundary.

    Uses the half-open crossing rule (y1 <= py < y2 or y2 <= py < y1) so rays
    through vertices are counted consistently.
    """
    px, py = p
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if (y1 <= py) != (y2 <= py):
            # x coordinate of the edge at height py
            xi = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if px < xi:
                inside = not inside
    return inside


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if cross(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Exact closed-segment intersection test."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and on_segment(a, c, d):
        return True
    if d2 == 0 and on_segment(b, c, d):
        return True
    if d3 == 0 and on_segment(c, a, b):
        return True
    if d4 == 0 and on_segment(d, a, b):
        return True
    return False


def dist2_point_segment(p: Point, a: Point, b: Point) -> Fraction:
    """Exact squared distance from p to segment [a, b]."""
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    len2 = dx * dx + dy * dy
    if len2 == 0:
        ex, ey = px - ax, py - ay
        return ex * ex + ey * ey
    t = ((px - ax) * dx + (py - ay) * dy) / len2
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    qx, qy = ax + t * dx, ay + t * dy
    ex, ey = px - qx, py - qy
    return ex * ex + ey * ey


def lex_smallest_segment_midpoint(poly: list[Point]) -> Point:
    """Sample point inside-agnostic: midpoint of the lexicographically
    smallest edge of the closed polyline."""
    n = len(poly)
    best = None
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        key = (min(a, b), max(a, b))
        if best is None or key < best[0]:
            best = (key, a, b)
    _, a, b = best
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def nesting_and_ccw(circles: list[list[Point]]) -> tuple[list[int], list[bool]]:
    """For pairwise disjoint closed polylines: (enclosure counts, ccw flags).

    ccw is read off the traversal order of each polyline (positive signed
    area).  Enclosure of C counts circles whose polygon strictly contains a
    sample point of C.
    """
    samples = [lex_smallest_segment_midpoint(c) for c in circles]
    depths = []
    for i, s in enumerate(samples):
        d = 0
        for j, other in enumerate(circles):
            if i != j and point_in_polygon(s, other):
                d += 1
        depths.append(d)
    ccw = [signed_area2(c) > 0 for c in circles]
    return depths, ccw
