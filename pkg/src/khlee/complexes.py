"""Finite chain complexes of free Q[t]-modules with q-graded generators.

Homogeneity makes every differential entry a monomial c*t^k with
q(target) = q(source) + 4k, so entries are stored as (Fraction, int) pairs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import KhleeError

Entry = tuple  # (Fraction coeff, int t-exponent)


class GradedComplex:
    """Generators carry (h, q); the differential raises h by one."""

    def __init__(self):
        self.gen_h = {}  # gen id -> h
        self.gen_q = {}  # gen id -> q
        self.out = {}  # src -> {tgt: (coeff, texp)}
        self.inc = {}  # tgt -> {src: (coeff, texp)}
        self._next = 0

    # -- construction ---------------------------------------------------------

    def add_gen(self, h: int, q: int, gid=None) -> int:
        if gid is None:
            gid = self._next
        self._next = max(self._next, gid + 1)
        if gid in self.gen_h:
            raise KhleeError(f"duplicate generator id {gid}")
        self.gen_h[gid] = h
        self.gen_q[gid] = q
        self.out[gid] = {}
        self.inc[gid] = {}
        return gid

    def add_entry(self, src: int, tgt: int, coeff, texp: int) -> None:
        c = Fraction(coeff)
        old = self.out[src].get(tgt)
        if old is not None:
            if old[1] != texp and old[0] and c:
                raise KhleeError("non-monomial entry would violate homogeneity")
            c = c + old[0]
        if c == 0:
            self.out[src].pop(tgt, None)
            self.inc[tgt].pop(src, None)
            return
        if self.gen_h[tgt] != self.gen_h[src] + 1:
            raise KhleeError("differential must raise h by one")
        if self.gen_q[tgt] != self.gen_q[src] + 4 * texp:
            raise KhleeError(
                f"inhomogeneous entry {src}->{tgt}: q {self.gen_q[src]} -> "
                f"{self.gen_q[tgt]} with t^{texp}")
        self.out[src][tgt] = (c, texp)
        self.inc[tgt][src] = (c, texp)

    def remove_gen(self, gid: int) -> None:
        for tgt in list(self.out[gid]):
            del self.inc[tgt][gid]
        for src in list(self.inc[gid]):
            del self.out[src][gid]
        del self.out[gid]
        del self.inc[gid]
        del self.gen_h[gid]
        del self.gen_q[gid]

    # -- views ------------------------------------------------------------------

    @property
    def n_gens(self) -> int:
        return len(self.gen_h)

    def gens(self):
        return sorted(self.gen_h)

    def gens_at(self, h: int):
        return sorted(g for g, hh in self.gen_h.items() if hh == h)

    def h_range(self):
        if not self.gen_h:
            return (0, -1)
        hs = self.gen_h.values()
        return (min(hs), max(hs))

    def entry(self, src: int, tgt: int):
        return self.out[src].get(tgt)

    def copy(self) -> "GradedComplex":
        c = GradedComplex()
        c.gen_h = dict(self.gen_h)
        c.gen_q = dict(self.gen_q)
        c.out = {g: dict(m) for g, m in self.out.items()}
        c.inc = {g: dict(m) for g, m in self.inc.items()}
        c._next = self._next
        return c

    # -- checks -------------------------------------------------------------------

    def check_d_squared(self) -> None:
        for src, row in self.out.items():
            acc = {}
            for mid, (c1, e1) in row.items():
                for tgt, (c2, e2) in self.out[mid].items():
                    key = (tgt, e1 + e2)
                    acc[key] = acc.get(key, Fraction(0)) + c1 * c2
            for (tgt, e), total in acc.items():
                if total != 0:
                    raise KhleeError(f"d^2 != 0 at {src} -> {tgt} (t^{e}: {total})")

    # -- specializations -----------------------------------------------------------

    def dims_at_t(self, value) -> dict:
        """Homology dimensions over Q after substituting t := value.

        Returns {h: dim};  for value == 0 use dims_at_t0 for the (h, q) split.
        """
        from .linalg import rank_of_columns

        v = Fraction(value)
        hmin, hmax = self.h_range()
        gens_by_h = {h: self.gens_at(h) for h in range(hmin, hmax + 1)}
        ranks = {}
        for h in range(hmin, hmax + 1):
            idx = {g: i for i, g in enumerate(gens_by_h.get(h + 1, []))}
            cols = []
            for src in gens_by_h.get(h, []):
                col = {}
                for tgt, (c, e) in self.out[src].items():
                    cv = c * v**e
                    if cv:
                        col[idx[tgt]] = cv
                if col:
                    cols.append(col)
            ranks[h] = rank_of_columns(cols)
        dims = {}
        for h in range(hmin, hmax + 1):
            d = len(gens_by_h.get(h, [])) - ranks.get(h, 0) - ranks.get(h - 1, 0)
            if d:
                dims[h] = d
        return dims

    def dims_at_t0(self) -> dict:
        """Khovanov specialization: {(h, q): dim} over Q at t = 0."""
        from .linalg import rank_of_columns

        blocks = {}
        for g, h in self.gen_h.items():
            blocks.setdefault((h, self.gen_q[g]), []).append(g)
        ranks = {}
        for (h, q), srcs in sorted(blocks.items()):
            tgt_list = blocks.get((h + 1, q), [])
            idx = {g: i for i, g in enumerate(sorted(tgt_list))}
            cols = []
            for src in sorted(srcs):
                col = {}
                for tgt, (c, e) in self.out[src].items():
                    if e == 0:
                        col[idx[tgt]] = c
                if col:
                    cols.append(col)
            ranks[(h, q)] = rank_of_columns(cols)
        dims = {}
        for (h, q), gens in blocks.items():
            d = len(gens) - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
            if d:
                dims[(h, q)] = d
        return dims

    # -- text export (External Interfaces) -----------------------------------------

    def export_text(self) -> str:
        lines = []
        for g in self.gens():
            lines.append(f"GEN {self.gen_h[g]} {self.gen_q[g]} {g}")
        for src in self.gens():
            for tgt in sorted(self.out[src]):
                c, e = self.out[src][tgt]
                lines.append(f"DIF {self.gen_h[src]} {src} {tgt} {c} t^{e}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "GradedComplex":
        c = cls()
        pending = []
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "GEN":
                _, h, q, gid = parts
                c.add_gen(int(h), int(q), gid=int(gid))
            elif parts[0] == "DIF":
                _, _h, src, tgt, coeff, tpow = parts
                pending.append((int(src), int(tgt), Fraction(coeff), int(tpow[2:])))
        for src, tgt, coeff, e in pending:
            c.add_entry(src, tgt, coeff, e)
        return c
