import pytest

import khlee.diagrams as dg
from khlee.diagrams import BraidWord, from_braid
from khlee.errors import OrientationConflict, ParseError


def closure(n, letters, orient=()):
    return from_braid(BraidWord(n, letters, orient))


def test_braid_word_validation():
    with pytest.raises(ParseError):
        BraidWord(2, (2,))
    with pytest.raises(ParseError):
        BraidWord(2, (0,))
    with pytest.raises(ParseError):
        BraidWord(3, (1,), (True,))
    assert BraidWord(3, ("e2", 1)).letters == (("e", 2), 1)


def test_identity_closures():
    u2 = closure(2, ())
    assert u2.n_crossings == 0
    assert u2.n_components == 2
    assert u2.seifert_count() == 2


def test_trefoil_counts():
    t = closure(2, (1, 1, 1))
    assert (t.n_plus, t.n_minus, t.n_components) == (3, 0, 1)
    assert t.oriented_choice() == (0, 0, 0)
    assert t.seifert_count() == 2
    assert t.euler_check()
    assert t.linking_matrix() == [[3]]


def test_figure8_counts():
    f8 = closure(3, (1, -2, 1, -2))
    assert (f8.n_plus, f8.n_minus) == (2, 2)
    assert f8.writhe == 0
    assert f8.seifert_count() == 3
    # 0 at positive crossings, 1 at negative
    choice = f8.oriented_choice()
    assert sorted(choice) == [0, 0, 1, 1]


def test_mixed_orientation_signs():
    # parallel strands: positive letter gives a positive crossing
    hopf = closure(2, (1, 1))
    assert [c.sign for c in hopf.crossings] == [1, 1]
    assert hopf.linking_matrix()[0][1] == 1
    # antiparallel strands flip the sign
    f11 = closure(2, (1, 1), (True, False))
    assert [c.sign for c in f11.crossings] == [-1, -1]
    assert f11.linking_matrix()[0][1] == -1


def test_orientation_conflict():
    # odd power of sigma_1 joins the strands into one component, so the
    # mixed pattern cannot be realized
    with pytest.raises(OrientationConflict):
        closure(2, (1,), (True, False))


def test_mirror_and_reverse():
    t = closure(2, (1, 1, 1))
    m = t.mirror()
    assert (m.n_plus, m.n_minus) == (0, 3)
    mm = m.mirror()
    assert [c.sign for c in mm.crossings] == [c.sign for c in t.crossings]
    r = t.reverse()
    assert (r.n_plus, r.n_minus) == (3, 0)
    assert r.reverse().oriented_choice() == t.oriented_choice()
    # linking matrix behavior
    hopf = closure(2, (1, 1))
    assert hopf.reverse().linking_matrix() == hopf.linking_matrix()
    assert hopf.mirror().linking_matrix()[0][1] == -hopf.linking_matrix()[0][1]


def test_resolutions_of_hopf():
    hopf = closure(2, (1, 1))
    r00 = hopf.resolve((0, 0))
    assert len(r00.circles) == 2
    # the canonical closure layout nests the Seifert circles
    assert sorted(c.depth for c in r00.circles) == [0, 1]
    assert all(c.ccw is not None for c in r00.circles)
    r11 = hopf.resolve((1, 1))
    assert len(r11.circles) == 2
    assert r11.circles[0].ccw is None  # not the oriented resolution
    r01 = hopf.resolve((0, 1))
    assert len(r01.circles) == 1


def test_seifert_equals_oriented_circles():
    for n, letters, orient in [(2, (1, 1, 1), ()), (3, (1, -2, 1, -2), ()),
                               (2, (1, 1), (True, False)),
                               (3, (-1, 2, ("e", 1)), (True, False, True))]:
        d = closure(n, letters, orient)
        res = d.resolve(d.oriented_choice(), geometry=False)
        assert len(res.circles) == d.seifert_count()


def test_turnback_letters():
    wh = closure(3, (-1, 2, ("e", 1)), (True, False, True))
    assert wh.n_components == 1
    assert (wh.n_plus, wh.n_minus) == (2, 0)
    assert wh.seifert_count() == 3
    assert wh.euler_check()


def test_disjoint_union():
    t = closure(2, (1, 1, 1))
    u = closure(1, ())
    du = dg.disjoint_union(t, u)
    assert du.n_components == 2
    assert du.n_plus == 3
    assert du.braid is not None  # block sum stays scannable
    assert du.braid.strands == 3


def test_connect_sum_counts():
    t = closure(2, (1, 1, 1))
    granny = dg.connect_sum(t, 0, t, 0)
    assert granny.n_components == 1
    assert granny.n_plus == 6
    assert granny.euler_check()
    assert granny.seifert_count() == 3
    hopf = closure(2, (1, 1))
    hh = dg.connect_sum(hopf, 0, hopf, 1)
    assert hh.n_components == 3  # ell(A # B) = ell(A) + ell(B) - 1
    with pytest.raises(dg.BadComponent):
        dg.connect_sum(t, 1, t, 0)


def test_arc_incidence_invariant():
    for d in [closure(2, (1, 1, 1)), closure(3, (1, -2, 1, -2)),
              closure(3, (-1, 2, ("e", 1)), (True, False, True))]:
        seen = {}
        for c in d.crossings:
            for pos, aid in enumerate(c.ends):
                seen[aid] = seen.get(aid, 0) + 1
        for a in d.arcs.values():
            if a.closed:
                assert a.id not in seen
            else:
                assert seen[a.id] == 2


def test_nesting_partial_order():
    d = closure(3, (1, 2, 1, 2))
    from khlee.geometry import lex_smallest_segment_midpoint, point_in_polygon
    for choice_bits in range(2 ** d.n_crossings):
        choice = tuple((choice_bits >> i) & 1 for i in range(d.n_crossings))
        res = d.resolve(choice)
        circles = res.circles
        inside = {}
        for i, ci in enumerate(circles):
            for j, cj in enumerate(circles):
                if i == j:
                    continue
                p = lex_smallest_segment_midpoint(ci.path)
                inside[(i, j)] = point_in_polygon(p, cj.path)
        for i in range(len(circles)):
            for j in range(len(circles)):
                if i == j:
                    continue
                assert not (inside[(i, j)] and inside[(j, i)])  # antisymmetric
                for k in range(len(circles)):
                    if k in (i, j):
                        continue
                    if inside[(i, j)] and inside[(j, k)]:
                        assert inside[(i, k)]  # transitive
        for i, c in enumerate(circles):
            assert c.depth == sum(1 for j in range(len(circles))
                                  if j != i and inside[(i, j)])
