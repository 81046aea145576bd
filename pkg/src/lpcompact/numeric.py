"""Exact-first scalar helpers.

Quantities are :class:`fractions.Fraction` whenever the arithmetic permits and
fall back to ``float`` otherwise (irrational roots, non-integer exponents).
Every comparison goes through :func:`leq`, which is exact on two fractions and
uses a 1e-12 relative tolerance as soon as a float is involved.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Real = Union[Fraction, float]

TOLERANCE = 1e-12


def as_number(x) -> Real:
    """Coerce ints, strings and fractions to ``Fraction``; keep floats as floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return x
    raise TypeError(f"unsupported scalar {x!r}")


def as_rational(x) -> Fraction:
    """Like :func:`as_number` but floats are read through their decimal repr (0.9 -> 9/10)."""
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite scalar {x!r}")
        return Fraction(repr(x))
    return as_number(x)


def as_exponent(p) -> Real:
    """Validate an integrability exponent p >= 1.

    Integer-valued exponents become ``Fraction`` so that powers stay exact.
    """
    if isinstance(p, float) and p.is_integer():
        p = Fraction(int(p))
    q = as_number(p)
    if q < 1:
        raise ValueError(f"exponent must be >= 1, got {p!r}")
    return q


def is_exact(*xs) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def is_integer_exponent(p: Real) -> bool:
    return isinstance(p, Fraction) and p.denominator == 1


def power(x: Real, p: Real) -> Real:
    """x**p, exact when x is rational and p is an integer (negative allowed for x != 0)."""
    if isinstance(x, Fraction) and is_integer_exponent(p):
        return x ** int(p)
    if x == 0:
        return Fraction(0) if isinstance(x, Fraction) else 0.0
    return float(x) ** float(p)


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    if k == 2:
        r = math.isqrt(n)
    else:
        r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else None
        if r is None:
            return None
        # correct float rounding around the candidate
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == n:
                return cand
        return None
    return r if r * r == n else None


def root(x: Real, p: Real) -> Real:
    """x**(1/p) for x >= 0; exact when x is a rational perfect p-th power."""
    if x < 0:
        raise ValueError("root of a negative number")
    if is_integer_exponent(p) and isinstance(x, Fraction):
        k = int(p)
        if k == 1:
            return x
        num, den = _iroot(x.numerator, k), _iroot(x.denominator, k)
        if num is not None and den is not None:
            return Fraction(num, den)
    if x == 0:
        return 0.0
    return float(x) ** (1.0 / float(p))


def leq(a: Real, b: Real, tol: float = TOLERANCE) -> bool:
    """a <= b, exactly for two fractions, otherwise up to a relative tolerance."""
    if is_exact(a, b):
        return a <= b
    fa, fb = float(a), float(b)
    return fa <= fb + tol * max(1.0, abs(fa), abs(fb))


def decimal_str(x: Real, digits: int = 12) -> str:
    """Render with ``digits`` significant digits; deterministic for fractions."""
    if isinstance(x, Fraction):
        with localcontext() as ctx:
            ctx.prec = digits
            d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d.normalize(), "f") if d != 0 else "0"
    return format(float(x), f".{digits}g")


def exact_str(x: Real) -> str:
    """Exact rational rendering ``n/d`` (or ``n``); empty for floats."""
    if isinstance(x, Fraction):
        return str(x)
    return ""
