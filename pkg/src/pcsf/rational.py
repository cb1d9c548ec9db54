"""Exact scalar type used for every cost, penalty and duration.

``Rat`` is ``gmpy2.mpq`` when gmpy2 is importable and ``fractions.Fraction``
otherwise.  Both are canonically reduced with a positive denominator and both
expose ``numerator``/``denominator``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as Rat

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    Rat = Fraction
    HAVE_GMPY2 = False

__all__ = [
    "Rat",
    "ZERO",
    "ONE",
    "INF",
    "Infinity",
    "to_rat",
    "parse_decimal",
    "format_rat",
    "format_decimal",
    "is_rat",
]

ZERO = Rat(0)
ONE = Rat(1)

_DECIMAL_RE = re.compile(r"^(\d+)(?:\.(\d{1,9}))?$")


@total_ordering
class Infinity:
    """Sentinel for an unbounded capacity.  Greater than every finite value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("pcsf.INF")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def is_rat(x) -> bool:
    return isinstance(x, (Rat, Fraction, int)) and not isinstance(x, bool)


def to_rat(x) -> Rat:
    """Convert ints, Fractions, mpq and exact strings (``"3/2"``, ``"0.25"``)."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Rat(x)
    if isinstance(x, Fraction):
        return Rat(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Rat(int(num), int(den))
        return parse_decimal(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact value")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Rat(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def parse_decimal(text: str) -> Rat:
    """Parse a nonnegative decimal with at most nine fractional digits."""
    m = _DECIMAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a nonnegative decimal with <= 9 fractional digits: {text!r}")
    whole, frac = m.group(1), m.group(2) or ""
    return Rat(int(whole + frac), 10 ** len(frac))


def format_rat(x) -> str:
    """``p/q`` for non-integers, plain integer otherwise."""
    x = to_rat(x)
    num, den = int(x.numerator), int(x.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_decimal(x) -> str:
    """Exact decimal rendering; raises if more than nine fractional digits are needed."""
    x = to_rat(x)
    num, den = int(x.numerator), int(x.denominator)
    if num < 0:
        raise ValueError("negative values have no instance-file form")
    if den == 1:
        return str(num)
    for digits in range(1, 10):
        scaled = num * 10**digits
        if scaled % den == 0:
            q = scaled // den
            s = str(q).rjust(digits + 1, "0")
            return f"{s[:-digits]}.{s[-digits:]}"
    raise ValueError(f"{num}/{den} has no decimal form with <= 9 fractional digits")
