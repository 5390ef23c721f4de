"""Acceptance criteria, one test per criterion, exact values throughout.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
pass/fail lines; scripts/run_acceptance.py wraps exactly that.
"""

import time

import pytest

from khlee.corpus import builtin_diagram, builtin_ssr, torus_word
from khlee.diagrams import BraidWord, OrientedDiagram, from_braid
from khlee.lee import s_invariant
from khlee.ssr import approx_threshold, insert_twists, s_ssr, stabilization_check
from khlee.verify import run_suite


def _s(d, engine="scan"):
    return s_invariant(d, engine=engine, with_module=False, _compute_plus=False).s


def _report(num, ok, text):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_1_unit_values():
    cases = [
        ("unknot", 0), ("U2", -1), ("hopf+", 1),
        ("trefoil+", 2), ("figure8", 0), ("trefoil-", -2),
    ]
    results = []
    for name, expect in cases:
        t0 = time.perf_counter()
        got = _s(builtin_diagram(name), engine="auto")
        dt = time.perf_counter() - t0
        results.append((name, got, expect, dt))
    ok = all(g == e and dt < 1.0 for _n, g, e, dt in results)
    detail = ", ".join(f"s({n})={g} [{dt * 1000:.0f}ms]" for n, g, e, dt in results)
    _report(1, ok, f"unit values exact, each < 1 s: {detail}")


def test_criterion_2_torus_positivity():
    rows = []
    ok = True
    for p in (2, 3, 4):
        d = from_braid(BraidWord(p, torus_word(p, p)))
        t0 = time.perf_counter()
        got = _s(d, engine="scan")
        dt = time.perf_counter() - t0
        ok = ok and got == (p - 1) ** 2 and dt < 30.0
        rows.append(f"s(T({p},{p}))={got} [{dt:.1f}s]")
    positives = [("trefoil+", BraidWord(2, (1, 1, 1))),
                 ("T(2,4)", BraidWord(2, (1,) * 4)),
                 ("T(2,6)", BraidWord(2, (1,) * 6)),
                 ("T(3,3)", BraidWord(3, torus_word(3, 3))),
                 ("T(3,4)", BraidWord(3, torus_word(3, 4))),
                 ("T(4,4)", BraidWord(4, torus_word(4, 4))),
                 ("pos-braid-a", BraidWord(3, (1, 2, 1, 1))),
                 ("pos-braid-b", BraidWord(4, (1, 2, 3, 2, 1, 3)))]
    for name, w in positives:
        d = from_braid(w)
        formula = d.n_plus - d.seifert_count() + 1
        if _s(d, engine="scan") != formula:
            ok = False
            rows.append(f"{name}: positivity formula failed")
    _report(2, ok, "; ".join(rows) + f"; positivity formula on {len(positives)} positive braids")


def test_criterion_3_mixed_torus_links():
    rows = []
    ok = True
    for p in (1, 2):
        d = insert_twists(builtin_ssr(f"F_{p}"), (1,))
        t0 = time.perf_counter()
        got = _s(d, engine="scan")
        dt = time.perf_counter() - t0
        ok = ok and got == 1 - 2 * p and (p != 2 or dt < 300.0)
        rows.append(f"s(F_{p}(1))={got} [{dt:.1f}s, {d.n_crossings} crossings]")
    _report(3, ok, "; ".join(rows))


def test_criterion_4_fpq_regression():
    t0 = time.perf_counter()
    rows = []
    ok = True
    for p in range(5):
        for q in range(p + 1):
            if p + q > 4:
                continue
            for k in (1, 2):
                if p + q == 0:
                    got = s_invariant(OrientedDiagram([], {}, 0, {}, {}),
                                      with_module=False).s
                else:
                    d = insert_twists(builtin_ssr(f"F_{p},{q}"), (k,))
                    got = _s(d, engine="scan")
                shifted = got - k * (p - q) * (p - q - 1)
                if shifted != 1 - p - q:
                    ok = False
                    rows.append(f"F_{{{p},{q}}}({k}): shifted {shifted} != {1 - p - q}")
    dt = time.perf_counter() - t0
    ok = ok and dt < 1800.0
    _report(4, ok, (("; ".join(rows) + "; ") if rows else "") +
            f"all p>=q>=0 with p+q<=4, k in {{1,2}} [{dt:.1f}s total]")


def test_criterion_5_cable_regression():
    rows = []
    ok = True
    for p in (2, 3):
        for q in (1, 2):
            for k in (1, 2):
                d = insert_twists(builtin_ssr(f"C_({p},{q})"), (k,))
                got = _s(d, engine="scan")
                if got - k * p * (p - 1) != (p - 1) * (q - 1):
                    ok = False
                    rows.append(f"C_({p},{q})({k}) = {got}")
    _report(5, ok, ("; ".join(rows) + "; ") if rows else ""
            + "s(C_pq(k)) - kp(p-1) = (p-1)(q-1) for p in {2,3}, q in {1,2}, k in {1,2}")


def test_criterion_6_ssr_invariants():
    rows = []
    ok = True
    rep = s_ssr(builtin_ssr("Wh+"), engine="scan")
    if (rep.s_minus, rep.s_plus) != (0, 2):
        ok = False
    rows.append(f"s_-(Wh+)={rep.s_minus}, s_+(Wh+)={rep.s_plus}")
    for p in (1, 2):
        rp = s_ssr(builtin_ssr(f"F_{p}"), engine="scan")
        if (rp.s_minus, rp.s_plus) != (-(2 * p - 1), 2 * p - 1):
            ok = False
        rows.append(f"s_+-(F_{p})=({rp.s_minus},{rp.s_plus})")
    for name in ("Wh+", "F_1", "F_2"):
        s = builtin_ssr(name)
        kmax = approx_threshold(s, "minus") + 2
        _table, stab = stabilization_check(s, kmax, engine="scan")
        if not stab:
            ok = False
        rows.append(f"{name} stable to k={kmax}: {stab}")
    _report(6, ok, "; ".join(rows))


def test_criterion_7_property_suites():
    results = run_suite("all", quick=False)
    failures = [f"{n}: {det}" for n, okk, det in results if not okk]
    _report(7, not failures,
            f"{len(results)} checks on 52 corpus diagrams + 100 random braids"
            + ("; FAILURES: " + "; ".join(failures) if failures else ""))


def test_criterion_8_stretch_whitehead_double():
    """Optional, non-gating in the criteria, but it turns out to fit at desk
    scale: the 2-twisted positive Whitehead double of the trefoil has s = 2
    (the knot whose s-invariant differs from twice the knot Floer tau).
    Adjunction/Gluck-twist corollaries and the Hochschild recomputation of
    s(F_p) remain out of scope (no surface data; arc algebras excluded)."""
    from khlee.corpus import whitehead_double

    t0 = time.perf_counter()
    d = whitehead_double((1, 1, 1), 2, 2)
    got = _s(d, engine="scan")
    dt = time.perf_counter() - t0
    # companion checks: doubles of the *negative* trefoil have s = 0
    neg = _s(whitehead_double((-1, -1, -1), 2, 0), engine="scan")
    _report(8, got == 2 and neg == 0,
            f"s(Wh+(T_2,3, 2)) = {got} [{d.n_crossings} crossings, {dt:.1f}s]; "
            f"s(Wh+(mirror trefoil, 0)) = {neg}")
