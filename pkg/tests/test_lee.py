import pytest

from khlee.cube import build_cube, specialize_t
from khlee.diagrams import BraidWord, from_braid
from khlee.errors import InconsistentModule
from khlee.lee import (filtration_level, lee_generator, lee_vector_in_cube,
                       s_all_orientations, s_from_module, s_invariant)
from khlee.smith import HomologySummary, homology_qt


def D(n, letters, orient=()):
    return from_braid(BraidWord(n, letters, orient))


def test_unknot_generator():
    chain = lee_generator(D(1, ()))
    assert len(chain.terms) == 2
    assert chain.q_level() == -1


def test_unlink_generator():
    chain = lee_generator(D(2, ()))
    assert len(chain.terms) == 4
    assert chain.q_level() == -2


def test_hopf_cycles_both_orientations():
    d = D(2, (1, 1))
    lee_generator(d, (1, 1))
    lee_generator(d, (1, -1))  # raises NotACycle on a bug


def test_conjugate_flips_signs():
    chain = lee_generator(D(2, (1, 1, 1)))
    conj = chain.conjugate()
    assert conj.circle_signs == tuple(-s for s in chain.circle_signs)
    assert conj.q_level() == chain.q_level()


def test_filtration_levels():
    d = D(1, ())
    cube = build_cube(d, h_window=(-1, 0))
    chain = lee_generator(d)
    z = lee_vector_in_cube(chain, cube)
    assert filtration_level(specialize_t(cube.complex, 1), z) == -1
    d = D(2, (1, 1, 1))
    cube = build_cube(d, h_window=(-1, 0))
    z = lee_vector_in_cube(lee_generator(d), cube)
    assert filtration_level(specialize_t(cube.complex, 1), z) == 1  # s - 1


def test_s_values_brute():
    cases = [
        ((1, ()), (), 0),
        ((2, ()), (), -1),
        ((3, ()), (), -2),
        ((2, (1, 1)), (), 1),
        ((2, (1, 1, 1)), (), 2),
        ((2, (-1, -1, -1)), (), -2),
        ((3, (1, -2, 1, -2)), (), 0),
        ((2, (1, 1)), (True, False), -1),
    ]
    for (n, letters), orient, expect in cases:
        rep = s_invariant(D(n, letters, orient), engine="brute",
                          with_module=False, _compute_plus=False)
        assert rep.s == expect
        assert rep.s_min == expect - 1
        assert rep.s_max == expect + 1


def test_report_invariants():
    rep = s_invariant(D(2, (1, 1, 1)), engine="brute")
    assert rep.s_minus == rep.s == 2
    assert rep.s_plus == 2
    assert rep.free_gen_q_degrees == [1, 3]
    assert (rep.s - (1 - 1)) % 2 == 0
    d = rep.to_dict()
    assert d["s"] == 2 and d["orientation"] == [1]


def test_empty_link_convention():
    rep = s_invariant(from_braid(BraidWord(1, ())).__class__([], {}, 0, {}, {}))
    assert rep.s == 1
    assert rep.s_minus == 1 and rep.s_plus == 1


def test_all_orientations_hopf():
    reps = s_all_orientations(D(2, (1, 1)), engine="brute")
    assert sorted(r.s for r in reps) == [-1, 1]
    reps = s_all_orientations(D(2, ()), engine="brute")
    assert [r.s for r in reps] == [-1, -1]


def test_s_from_module():
    hs = homology_qt(build_cube(D(2, (1, 1, 1))).complex)
    assert s_from_module(hs, 1) == 2
    hs8 = homology_qt(build_cube(D(3, (1, -2, 1, -2))).complex)
    assert s_from_module(hs8, 1) == 0
    assert s_from_module(hs, 2) is None
    with pytest.raises(InconsistentModule):
        s_from_module(HomologySummary([(0, 1)], []), 1)


def test_mirror_and_reverse_symmetries():
    for n, letters in [(2, (1, 1, 1)), (3, (1, -2, 1, -2)), (3, (1, 2, 1))]:
        d = D(n, letters)
        s = s_invariant(d, engine="brute", with_module=False, _compute_plus=False).s
        sm = s_invariant(d.mirror(), engine="brute", with_module=False,
                         _compute_plus=False).s
        if d.n_components == 1:
            assert sm == -s
        sr = s_invariant(d.reverse(), engine="brute", with_module=False,
                         _compute_plus=False).s
        assert sr == s
