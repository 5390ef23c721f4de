"""Sparse exact arithmetic in Q[t].

Elements are stored as {exponent: Fraction} with no zero values.  Homogeneity
of the chain complexes keeps almost every value a single monomial c*t^k, but
the generic representation costs nothing and is needed transiently (tracked
Lee vectors, Smith normal form bookkeeping).
"""

from __future__ import annotations

from fractions import Fraction

Qt = dict  # {int exponent: Fraction coefficient}, zero coefficients absent

ZERO: Qt = {}


def mono(coeff, exp: int = 0) -> Qt:
    c = Fraction(coeff)
    return {exp: c} if c else {}


ONE = mono(1)


def add(a: Qt, b: Qt) -> Qt:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def neg(a: Qt) -> Qt:
    return {e: -c for e, c in a.items()}

def sub(a: Qt, b: Qt) -> Qt:
    return add(a, neg(b))


def mul(a: Qt, b: Qt) -> Qt:
    out: Qt = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def scale(a: Qt, coeff) -> Qt:
    c = Fraction(coeff)
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def shift(a: Qt, exp: int) -> Qt:
    """Multiply by t^exp."""
    return {e + exp: v for e, v in a.items()}


def is_zero(a: Qt) -> bool:
    return not a


def is_monomial(a: Qt) -> bool:
    return len(a) == 1


def monomial_parts(a: Qt) -> tuple[Fraction, int]:
    """(coefficient, exponent) of a monomial; raises if not a monomial."""
    if len(a) != 1:
        raise ValueError(f"not a monomial: {a}")
    ((e, c),) = a.items()
    return c, e


def const_coeff(a: Qt) -> Fraction:
    """Coefficient of t^0."""
    return a.get(0, Fraction(0))


def eval_at(a: Qt, value) -> Fraction:
    v = Fraction(value)
    total = Fraction(0)
    for e, c in a.items():
        total += c * v**e
    return total


def min_exp(a: Qt) -> int:
    return min(a)


def to_str(a: Qt) -> str:
    if not a:
        return "0"
    parts = []
    for e in sorted(a):
        c = a[e]
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"{c}*t" if c != 1 else "t")
        else:
            parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
    return " + ".join(parts)
