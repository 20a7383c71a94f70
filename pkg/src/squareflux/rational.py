"""Exact rationals.

All geometry runs on :class:`gmpy2.mpq`; public values are handed out as
:class:`fractions.Fraction` so callers never need gmpy2 themselves.
"""
from fractions import Fraction

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def to_fraction(q) -> Fraction:
    q = Q(q)
    return Fraction(int(q.numerator), int(q.denominator))


def as_q(x):
    """Accept int, Fraction, mpq or a ``"p/q"`` string."""
    if isinstance(x, str):
        return Q(Fraction(x.strip()))
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    return Q(x)


def format_q(q) -> str:
    """Bit-exact ``"num/den"`` (denominator always present)."""
    q = Q(q)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def floor(q) -> int:
    return int(gmpy2.floor(Q(q)))


def frac(q):
    """Representative of ``q`` modulo 1 in ``[0, 1)``."""
    q = Q(q)
    return q - floor(q)
