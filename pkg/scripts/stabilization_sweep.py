#!/usr/bin/env python3
"""Sweep s(D(k, ..., k)) for a built-in SSr diagram.

Usage: python scripts/stabilization_sweep.py [name] [k_max] [shift_per_k]

The shifted column explores the conjectural stabilization of
s(D(k)) - k * sum |eta_i|(|eta_i| - 1) for non-null-homologous links; e.g.
`stabilization_sweep.py 'C_(2,1)' 4 2` shows the cable family stabilizing.
"""

import sys

from khlee.corpus import builtin_ssr
from khlee.ssr import eta, stabilization_check


def main():
    name = sys.argv[1] if len(sys.argv) > 1 else "Wh+"
    k_max = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    if len(sys.argv) > 3:
        shift = int(sys.argv[3])
    else:
        shift = sum(abs(e) * (abs(e) - 1) for e in eta(builtin_ssr(name)))
    s = builtin_ssr(name)
    table, stabilized = stabilization_check(s, k_max, shift_per_k=shift)
    print(f"{name}: eta = {eta(s)}, shift per k = {shift}")
    print(f"{'k':>4} {'s(D(k))':>8} {'shifted':>8}")
    for k, v, sh in table:
        print(f"{k:>4} {v:>8} {sh:>8}")
    print("stabilized:", stabilized)


if __name__ == "__main__":
    main()
