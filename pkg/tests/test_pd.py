import pytest

from khlee.errors import NonPlanar, ParseError
from khlee.lee import s_invariant
from khlee.pdcode import parse_pd

TREFOIL_R = "PD[X(4,2,5,1), X(6,4,1,3), X(2,6,3,5)]"
FIG8 = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]"


def test_empty():
    d = parse_pd("PD[]")
    assert d.n_crossings == 0
    assert d.n_components == 0


def test_positive_trefoil_pd():
    d = parse_pd(TREFOIL_R)
    assert (d.n_plus, d.n_minus, d.n_components) == (3, 0, 1)
    assert d.euler_check()


def test_figure8_pd():
    d = parse_pd(FIG8)
    assert (d.n_plus, d.n_minus) == (2, 2)
    assert d.writhe == 0
    assert d.n_components == 1
    # agrees with the braid closure of (s1 s2^-1)^2
    from khlee.cube import build_cube
    from khlee.diagrams import BraidWord, from_braid
    braid = from_braid(BraidWord(3, (1, -2, 1, -2)))
    assert build_cube(d).complex.dims_at_t0() == build_cube(braid).complex.dims_at_t0()


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_pd("X(1,2,3,4)")
    with pytest.raises(ParseError):
        parse_pd("PD[X(1,2,3)]")
    with pytest.raises(ParseError):
        parse_pd("PD[X(1,4,2,5)]")  # arcs appearing once
    # virtual-knot-like incidence data fails the Euler check
    with pytest.raises(NonPlanar):
        parse_pd("PD[X(1,2,3,4), X(2,3,1,4)]")


def test_orient_suffix():
    base = parse_pd("PD[X(1,3,2,4), X(3,1,4,2)]")
    assert base.linking_matrix()[0][1] == 1
    flipped = parse_pd("PD[X(1,3,2,4), X(3,1,4,2)]; orient: comp2=-")
    assert flipped.linking_matrix()[0][1] == -1
    with pytest.raises(ParseError):
        parse_pd("PD[X(1,3,2,4), X(3,1,4,2)]; orient: comp9=-")


def test_kinks():
    for code in ("PD[X(1,2,2,1)]", "PD[X(2,1,1,2)]", "PD[X(1,1,2,2)]"):
        d = parse_pd(code)
        assert d.n_crossings == 1
        assert d.n_components == 1
        rep = s_invariant(d, engine="brute", with_module=False, _compute_plus=False)
        assert rep.s == 0


def test_pd_s_values():
    assert s_invariant(parse_pd(TREFOIL_R), engine="brute",
                       with_module=False, _compute_plus=False).s == 2
    assert s_invariant(parse_pd(FIG8), engine="brute",
                       with_module=False, _compute_plus=False).s == 0
