"""Canonical Lee cycles, quantum filtration levels, and the s-invariant.

The Lee cycle of an orientation o lives on the oriented resolution: each
circle C gets (-1)^{z(C)} 1 + x, where z(C) counts the circles enclosing C
plus one if C runs counterclockwise.  Both filtration engines (brute cube
slice, reduced complex with a tracked retraction) end in the same
descending-level solve: the level of [z] is the q-degree of the first
coordinate at which z stops being reducible modulo boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import qt
from .cube import CubeComplex, FilteredComplex, build_cube, specialize_t
from .diagrams import OrientedDiagram
from .errors import InconsistentModule, KhleeError, NotACycle
from .frobenius import FrobeniusData
from .linalg import ColumnSpace
from .reduction import scan_reduce
from .smith import HomologySummary, homology_qt

BRUTE_CROSSING_DEFAULT = 14


@dataclass
class LeeChain:
    """A rational combination of circle labelings of one resolution."""

    diagram: OrientedDiagram  # reoriented per the chain's orientation
    orientation: tuple  # +1/-1 per component of the original diagram
    choice: tuple  # the oriented resolution of the reoriented diagram
    circle_signs: tuple  # (-1)^{z(C)} per circle, in resolution order
    terms: dict  # label mask -> Fraction

    @property
    def h(self) -> int:
        return 0

    def q_level(self) -> int:
        """Minimum generator q-degree over the nonzero terms (recomputed)."""
        d = self.diagram
        base = sum(self.choice) + d.n_plus - 2 * d.n_minus
        k = len(self.circle_signs)
        best = None
        for mask, c in self.terms.items():
            if not c:
                continue
            q = base + sum(-1 if (mask >> j) & 1 else 1 for j in range(k))
            best = q if best is None else min(best, q)
        if best is None:
            raise KhleeError("empty Lee chain")
        return best

    def conjugate(self) -> "LeeChain":
        """The chain of the globally reversed orientation (all signs flip)."""
        k = len(self.circle_signs)
        terms = {}
        for mask, c in self.terms.items():
            ones = k - bin(mask).count("1")
            terms[mask] = c if ones % 2 == 0 else -c
        return LeeChain(self.diagram, tuple(-x for x in self.orientation),
                        self.choice, tuple(-s for s in self.circle_signs), terms)


def _expand_terms(signs) -> dict:
    terms = {0: Fraction(1)}
    for j, eps in enumerate(signs):
        new = {}
        for mask, c in terms.items():
            new[mask] = c * eps  # label 1 on circle j
            new[mask | (1 << j)] = c  # label x on circle j
        terms = new
    return terms


def _check_cycle_local(d: OrientedDiagram, res, terms) -> None:
    """Verify d(chain) = 0 at t = 1 using only the edges leaving the
    oriented resolution (each edge lands in its own target resolution)."""
    choice = tuple(res.choice)
    arcs_list = [c.arcs for c in res.circles]
    arc2circle = {}
    for j, arcs in enumerate(arcs_list):
        for a in arcs:
            arc2circle[a] = j
    k = len(arcs_list)
    for i, cross in enumerate(d.crossings):
        if choice[i] != 0:
            continue
        ch2 = choice[:i] + (1,) + choice[i + 1:]
        arcs2 = [c.arcs for c in d.resolve(ch2, geometry=False).circles]
        arc2circle2 = {}
        for j, arcs in enumerate(arcs2):
            for a in arcs:
                arc2circle2[a] = j
        involved = sorted({arc2circle[a] for a in cross.ends})
        involved2 = sorted({arc2circle2[a] for a in cross.ends})
        carry = {j: arc2circle2[min(arcs_list[j])] for j in range(k) if j not in involved}
        acc = {}
        for mask, c in terms.items():
            base = 0
            for j, jt in carry.items():
                if (mask >> j) & 1:
                    base |= 1 << jt
            if len(involved) == 2:
                la, lb = (mask >> involved[0]) & 1, (mask >> involved[1]) & 1
                for coeff, _te, lab in FrobeniusData.mul[(la, lb)]:
                    tm = base | (lab << involved2[0])
                    acc[tm] = acc.get(tm, Fraction(0)) + c * coeff
            else:
                la = (mask >> involved[0]) & 1
                for coeff, _te, (l1, l2) in FrobeniusData.comul[la]:
                    tm = base | (l1 << involved2[0]) | (l2 << involved2[1])
                    acc[tm] = acc.get(tm, Fraction(0)) + c * coeff
        if any(v != 0 for v in acc.values()):
            raise NotACycle(
                f"Lee chain is not a cycle at t=1 (crossing {i}); this "
                "signals a nesting/orientation computation bug")


def lee_generator(d: OrientedDiagram, orientation=None, verify: bool = True) -> LeeChain:
    """The canonical Lee cycle for the given component orientation."""
    if d.n_components == 0:
        raise KhleeError("the empty diagram has no Lee generator")
    if orientation is None:
        orientation = (1,) * d.n_components
    orientation = tuple(orientation)
    if len(orientation) != d.n_components:
        raise KhleeError("orientation vector length must equal component count")
    flips = {i for i, s in enumerate(orientation) if s < 0}
    dd = d.reorient(flips) if flips else d
    res = dd.resolve(dd.oriented_choice(), geometry=True)
    signs = []
    for c in res.circles:
        z = c.depth + (1 if c.ccw else 0)
        signs.append(1 if z % 2 == 0 else -1)
    terms = _expand_terms(signs)
    if verify:
        _check_cycle_local(dd, res, terms)
    return LeeChain(dd, orientation, tuple(res.choice), tuple(signs), terms)


# ---------------------------------------------------------------------------
# Filtration levels


def _level_solver(gen_q, gens_h0, columns):
    """Prepare the descending-level solver.

    Coordinates are the h=0 generators ordered by ascending q; columns are
    the boundaries.  Returns a function mapping a vector {gid: Fraction} to
    the filtration level of its homology class.
    """
    order = sorted(gens_h0, key=lambda g: (gen_q[g], g))
    index = {g: i for i, g in enumerate(order)}
    space = ColumnSpace()
    for col in columns:
        space.insert({index[g]: v for g, v in col.items() if v})

    def level(vec) -> int:
        v = {index[g]: c for g, c in vec.items() if c}
        if not v:
            raise InconsistentModule("zero vector has no filtration level")
        residual = space.reduce(v)
        if not residual:
            raise InconsistentModule("the chain is a boundary; no Lee class found")
        return gen_q[order[min(residual)]]

    return level


def filtration_level(filtered: FilteredComplex, zvec: dict, h: int = 0) -> int:
    """max over z' ~ z of (min generator q-degree in z'), at degree h."""
    boundary = {}
    for g, c in zvec.items():
        for tgt, v in filtered.out.get(g, {}).items():
            boundary[tgt] = boundary.get(tgt, Fraction(0)) + c * v
    if any(boundary.values()):
        raise NotACycle("the chain has nonzero differential at t=1")
    gens_h = filtered.gens_at(h)
    cols = []
    for src in filtered.gens_at(h - 1):
        col = {tgt: c for tgt, c in filtered.out.get(src, {}).items()}
        if col:
            cols.append(col)
    solver = _level_solver(filtered.gen_q, gens_h, cols)
    return solver(zvec)


def lee_vector_in_cube(chain: LeeChain, cube: CubeComplex) -> dict:
    return {cube.gen(chain.choice, mask): c for mask, c in chain.terms.items() if c}


# ---------------------------------------------------------------------------
# The s-invariant


@dataclass
class SReport:
    orientation: tuple
    s: int
    s_min: int
    s_max: int
    s_minus: int
    s_plus: int
    free_gen_q_degrees: list

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "s_min": self.s_min,
            "s_max": self.s_max,
            "s_minus": self.s_minus,
            "s_plus": self.s_plus,
            "orientation": list(self.orientation),
            "free_gen_q_degrees": list(self.free_gen_q_degrees),
        }


def _brute_levels(dd: OrientedDiagram, chain: LeeChain, limit):
    """(level(s_o), level(s_obar), level(+), level(-)) on the cube slice."""
    cube = build_cube(dd, limit=limit, h_window=(-1, 0))
    filt = specialize_t(cube.complex, 1)
    zo = lee_vector_in_cube(chain, cube)
    zbar = lee_vector_in_cube(chain.conjugate(), cube)
    gens_h0 = [g for g, hh in filt.gen_h.items() if hh == 0]
    cols = [dict(filt.out[src]) for src in filt.gens_at(-1) if filt.out[src]]
    solver = _level_solver(filt.gen_q, gens_h0, cols)
    plus = {g: zo.get(g, Fraction(0)) + zbar.get(g, Fraction(0)) for g in set(zo) | set(zbar)}
    minus = {g: zo.get(g, Fraction(0)) - zbar.get(g, Fraction(0)) for g in set(zo) | set(zbar)}
    return solver(zo), solver(zbar), solver(plus), solver(minus)


def _reduced_levels_from_tracked(red, vo, vbar):
    """Same four levels, on a reduced complex with tracked vectors (Qt)."""
    filt = specialize_t(red, 1)

    def at1(v):
        out = {}
        for g, poly in v.items():
            c = qt.eval_at(poly, 1)
            if c:
                out[g] = c
        return out

    zo, zbar = at1(vo), at1(vbar)
    gens_h0 = [g for g, hh in filt.gen_h.items() if hh == 0]
    cols = [dict(filt.out[src]) for src in filt.gens_at(-1) if filt.out[src]]
    solver = _level_solver(filt.gen_q, gens_h0, cols)
    plus = {g: zo.get(g, Fraction(0)) + zbar.get(g, Fraction(0)) for g in set(zo) | set(zbar)}
    minus = {g: zo.get(g, Fraction(0)) - zbar.get(g, Fraction(0)) for g in set(zo) | set(zbar)}
    return solver(zo), solver(zbar), solver(plus), solver(minus)


def _reduced_engine_levels(dd, chain, limit, want_module):
    """Full cube + Gaussian reduction with a tracked Lee cycle."""
    cube = build_cube(dd, limit=limit)
    vo = {g: qt.mono(c) for g, c in lee_vector_in_cube(chain, cube).items()}
    vbar = {g: qt.mono(c) for g, c in lee_vector_in_cube(chain.conjugate(), cube).items()}
    red, (vo, vbar) = scan_reduce(cube.complex, tracked=[vo, vbar])
    levels = _reduced_levels_from_tracked(red, vo, vbar)
    summary = homology_qt(red) if want_module else None
    return levels, summary


def pick_engine(d: OrientedDiagram, engine: str = "auto") -> str:
    if engine not in ("auto", "brute", "scan", "reduced"):
        raise KhleeError(f"unknown engine {engine!r}")
    if engine != "auto":
        return engine
    if d.braid is not None:
        return "scan"
    return "brute" if d.n_crossings <= BRUTE_CROSSING_DEFAULT else "reduced"


def s_invariant(d: OrientedDiagram, orientation=None, engine: str = "auto",
                limit=None, with_module: bool = True, _compute_plus: bool = True) -> SReport:
    """Full s-invariant report for one orientation class."""
    if d.n_components == 0:
        # the empty link has s = 1 by convention, for both signs
        return SReport((), 1, 0, 2, 1, 1, [0])
    requested = engine
    engine = pick_engine(d, engine)
    chain = lee_generator(d, orientation)
    dd = chain.diagram
    summary = None
    if engine == "scan":
        from .tlscan import scan_levels
        levels, summary = scan_levels(dd, chain, limit=limit, want_module=with_module)
    elif engine == "brute":
        levels = _brute_levels(dd, chain, limit)
        if with_module and d.n_crossings <= 12:
            cube = build_cube(dd, limit=limit)
            summary = homology_qt(cube.complex)
    else:
        levels, summary = _reduced_engine_levels(dd, chain, limit, with_module)
    lo, lbar, lplus, lminus = levels
    if lo != lbar:
        raise InconsistentModule(f"q[s_o] = {lo} differs from q[s_obar] = {lbar}")
    smin = lo
    if sorted((lplus, lminus)) != [smin, smin + 2]:
        raise InconsistentModule(
            f"combination levels {lplus, lminus} are not {{s_min, s_min+2}}")
    s = smin + 1
    ell = d.n_components
    if (s - (ell - 1)) % 2 != 0:
        raise InconsistentModule(f"s = {s} violates parity for {ell} components")
    s_plus = None
    if _compute_plus:
        rep_m = s_invariant(d.mirror(), orientation, engine=requested, limit=limit,
                            with_module=False, _compute_plus=False)
        s_plus = -rep_m.s
        if s_plus < s:
            raise InconsistentModule(f"s_- = {s} exceeds s_+ = {s_plus}")
    free_q = summary.free_q_at(0) if summary is not None else []
    if summary is not None and summary.free_rank() != 2**ell:
        raise InconsistentModule(
            f"free rank {summary.free_rank()} != 2^{ell}")
    return SReport(chain.orientation, s, smin, smin + 2, s,
                   s_plus if s_plus is not None else s, free_q)


def s_all_orientations(d: OrientedDiagram, engine: str = "auto", limit=None):
    """One report per orientation class {o, obar}."""
    ell = d.n_components
    if ell == 0:
        return [s_invariant(d)]
    if 2 ** (ell - 1) > 64:
        from .errors import ResourceLimit
        raise ResourceLimit(f"too many orientation classes for {ell} components")
    reports = []
    for bits in range(2 ** (ell - 1)):
        o = (1,) + tuple(-1 if (bits >> i) & 1 else 1 for i in range(ell - 1))
        reports.append(s_invariant(d, o, engine=engine, limit=limit,
                                   with_module=False))
    return reports


def s_from_module(summary: HomologySummary, ell: int):
    """Cross-check: for knots the two free generators sit at q = s -+ 1."""
    if ell != 1:
        return None
    if summary.free_rank() != 2:
        raise InconsistentModule(f"free rank {summary.free_rank()} != 2 for a knot")
    (h1, q1), (h2, q2) = summary.free
    if h1 != 0 or h2 != 0 or abs(q1 - q2) != 2:
        raise InconsistentModule(f"free part {summary.free} has the wrong shape")
    return (q1 + q2) // 2
