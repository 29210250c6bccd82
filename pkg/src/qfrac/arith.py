"""Exact scalar kernel: rationals, q-Pochhammer products and parameter points.

All scalars are :class:`fractions.Fraction`, which is kept in lowest terms with a
positive denominator after every operation, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InadmissiblePoint, ZeroBaseNegativeExponent

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would smuggle rounding into exact computations.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimal and exponent notation are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    if not _is_int(num) or (sep and not (den.strip().isdigit())):
        raise ValueError(f"not an exact rational: {text!r} (expected 'p' or 'p/q')")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int(s: str) -> bool:
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


def q_binom2(k: int) -> int:
    return k * (k - 1) // 2


def q_pow(q: Fraction, e: int) -> Fraction:
    if q == 0 and e < 0:
        raise ZeroBaseNegativeExponent(f"0 raised to negative power {e}")
    return Fraction(q) ** e


def pochhammer(a: Fraction, q: Fraction, n: int) -> Fraction:
    """(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1)); the empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    out = ONE
    t = Fraction(a)
    for _ in range(n):
        out *= 1 - t
        t *= q
    return out


def cross_poch(x: Fraction, y: Fraction, q: Fraction, k: int) -> Fraction:
    """Pole-free form of y^(k-1) (x/y;q)_(k-1), namely prod_{j<k-1} (y - x q^j).

    Defined at y = 0, where the quotient form is not.
    """
    if k < 1:
        raise ValueError("cross_poch needs k >= 1")
    out = ONE
    t = Fraction(x)
    for _ in range(k - 1):
        out *= y - t
        t *= q
    return out


def first_vanishing(a: Fraction, q: Fraction, n: int) -> Optional[int]:
    """Index j < n with 1 - a q^j = 0, or None when (a;q)_n is nonzero."""
    t = Fraction(a)
    for j in range(n):
        if t == 1:
            return j
        t *= q
    return None


def require_poch(a: Fraction, q: Fraction, n: int, name: str) -> None:
    """Raise InadmissiblePoint naming the zero factor of a Pochhammer product."""
    j = first_vanishing(a, q, n)
    if j is not None:
        raise InadmissiblePoint(f"{name}_{n}", f"factor j={j} of the product is zero")


@dataclass(frozen=True)
class ParamPoint:
    """An exact assignment of q, x, y.

    ``depth`` records the depth the point was sampled for; it is metadata and
    admissibility is rechecked by every consumer for the factors it actually uses.
    """

    q: Fraction
    x: Fraction
    y: Fraction
    depth: int = 0

    def __post_init__(self):
        for name in ("q", "x", "y"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")

    def vanishing_factor(self, depth: int) -> Optional[str]:
        """Name of the first denominator factor that vanishes up to ``depth``, if any."""
        q, x, y = self.q, self.x, self.y
        if y == 1:
            return "1-y"
        for label, base in (("(q;q)", q), ("(x;q)", x), ("(yq;q)", y * q)):
            j = first_vanishing(base, q, depth)
            if j is not None:
                return f"{label}_{j + 1}"
        t = x
        for j in range(depth + 1):
            if y == t:
                return f"y-x*q^{j}"
            t *= q
        return None

    def admissible(self, depth: int) -> bool:
        return self.vanishing_factor(depth) is None

    def require(self, depth: int) -> None:
        factor = self.vanishing_factor(depth)
        if factor is not None:
            raise InadmissiblePoint(factor, f"at q={self.q}, x={self.x}, y={self.y}")

    def with_depth(self, depth: int) -> ParamPoint:
        return ParamPoint(self.q, self.x, self.y, depth)

    def as_dict(self) -> dict:
        return {"q": str(self.q), "x": str(self.x), "y": str(self.y)}
