"""Gaussian elimination of invertible differential entries.

Eliminating an entry c*t^0 (c a nonzero rational, the only units of Q[t]
that can appear in a homogeneous monomial entry) produces a chain-homotopy
equivalent complex.  The retraction is pushed through optional tracked
vectors so Lee cycles survive the reduction with their homology classes
and quantum filtration levels intact.
"""

from __future__ import annotations

import heapq

from . import qt
from .complexes import GradedComplex


def scan_reduce(cx: GradedComplex, tracked=None, in_place=False):
    """Reduce until no invertible (t^0) entry remains.

    ``tracked`` is a list of vectors {generator id: Qt}; they are rewritten
    in place through each elimination's retraction.  Returns the reduced
    complex (the same object when in_place).
    """
    want_tracked = tracked is not None
    if not in_place:
        cx = cx.copy()
        tracked = [dict(v) for v in tracked] if tracked else ([] if tracked is None else [])
    tracked = tracked or []

    heap = []
    for src, row in cx.out.items():
        for tgt, (c, e) in row.items():
            if e == 0:
                heapq.heappush(heap, (len(row) * len(cx.inc[tgt]), src, tgt))

    while heap:
        _, b, c0 = heapq.heappop(heap)
        if b not in cx.out or c0 not in cx.out.get(b, {}):
            continue
        lam, e0 = cx.out[b][c0]
        if e0 != 0:
            continue
        outs = [(f, cf) for f, cf in cx.out[b].items() if f != c0]
        ins = [(e, ce) for e, ce in cx.inc[c0].items() if e != b]
        # retraction on tracked vectors: r(b) = 0, r(c0) = -(1/lam) * sum gamma_f f
        for v in tracked:
            vc = v.pop(c0, None)
            v.pop(b, None)
            if vc:
                for f, (gc, ge) in outs:
                    add = qt.scale(qt.shift(vc, ge), -gc / lam)
                    merged = qt.add(v.get(f, {}), add)
                    if merged:
                        v[f] = merged
                    else:
                        v.pop(f, None)
        cx.remove_gen(b)
        cx.remove_gen(c0)
        for e, (bc, be) in ins:
            for f, (gc, ge) in outs:
                cx.add_entry(e, f, -bc * gc / lam, be + ge)
                cur = cx.out[e].get(f)
                if cur and cur[1] == 0:
                    heapq.heappush(heap, (len(cx.out[e]) * len(cx.inc[f]), e, f))
    return (cx, tracked) if want_tracked else cx
