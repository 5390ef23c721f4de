#!/usr/bin/env python3
"""Time the reduction engines on torus links T(p,p).

Usage: python scripts/bench_reduction.py [max_p] [engine]
"""

import sys
import time

from khlee.corpus import torus_word
from khlee.cube import build_cube
from khlee.diagrams import BraidWord, from_braid
from khlee.lee import s_invariant
from khlee.tlscan import scan_complex


def main():
    max_p = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    engine = sys.argv[2] if len(sys.argv) > 2 else "scan"
    print(f"{'link':>10} {'crossings':>9} {'gens':>6} {'reduce':>8} {'s':>4} {'s time':>8}")
    for p in range(2, max_p + 1):
        d = from_braid(BraidWord(p, torus_word(p, p)))
        t0 = time.perf_counter()
        if engine == "scan":
            cx = scan_complex(d)
        else:
            cx = build_cube(d).complex
        t1 = time.perf_counter()
        rep = s_invariant(d, engine=engine, with_module=False, _compute_plus=False)
        t2 = time.perf_counter()
        print(f"{f'T({p},{p})':>10} {d.n_crossings:>9} {cx.n_gens:>6} "
              f"{t1 - t0:>7.2f}s {rep.s:>4} {t2 - t1:>7.2f}s")


if __name__ == "__main__":
    main()
