"""Truncated formal power series in z with exact rational coefficients.

A :class:`Series` stores c_0..c_N densely; N is its valid order. Binary
operations truncate to the smaller valid order of their operands, and reading a
coefficient past the valid order raises instead of returning a silent zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import ONE, ZERO, as_rational
from .errors import NonzeroConstantTerm, OrderExceeded, ZeroConstantTerm


@dataclass(frozen=True)
class Series:
    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = tuple(as_rational(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def unit(cls, order: int) -> Series:
        return cls((ONE,) + (ZERO,) * order)

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls((ZERO,) * (order + 1))

    @classmethod
    def monomial(cls, n: int, order: int, c=ONE) -> Series:
        """c*z^n truncated at ``order``."""
        return cls(c if i == n else ZERO for i in range(order + 1))

    @property
    def valid_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.valid_order:
            raise OrderExceeded(f"coefficient z^{n} requested, valid order is {self.valid_order}")
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> Series:
        if order > self.valid_order:
            raise OrderExceeded(f"cannot extend order {self.valid_order} to {order}")
        return Series(self.coeffs[: order + 1])

    def __add__(self, other: Series) -> Series:
        return ps_add(self, other)

    def __sub__(self, other: Series) -> Series:
        return ps_sub(self, other)

    def __neg__(self) -> Series:
        return ps_scale(-ONE, self)

    def __mul__(self, other):
        if isinstance(other, Series):
            return ps_mul(self, other)
        return ps_scale(other, self)

    __rmul__ = __mul__

    def evaluate(self, z) -> Fraction:
        """Exact value of the truncated polynomial at ``z`` (Horner)."""
        z = as_rational(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Series([{body}])"


def _common(a: Series, b: Series) -> int:
    return min(a.valid_order, b.valid_order)


def ps_add(a: Series, b: Series) -> Series:
    n = _common(a, b)
    return Series(a.coeffs[i] + b.coeffs[i] for i in range(n + 1))


def ps_sub(a: Series, b: Series) -> Series:
    n = _common(a, b)
    return Series(a.coeffs[i] - b.coeffs[i] for i in range(n + 1))


def ps_scale(c, a: Series) -> Series:
    c = as_rational(c)
    return Series(c * v for v in a.coeffs)


def ps_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the smaller valid order."""
    n = _common(a, b)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = ZERO
        for i in range(k + 1):
            if ac[i] and bc[k - i]:
                s += ac[i] * bc[k - i]
        out.append(s)
    return Series(out)


def ps_recip(a: Series) -> Series:
    """Multiplicative inverse, solving the triangular system a*b = 1 term by term."""
    c0 = a.coeffs[0]
    if c0 == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    inv0 = 1 / c0
    ac = a.coeffs
    b = [inv0]
    for k in range(1, a.valid_order + 1):
        s = ZERO
        for i in range(1, k + 1):
            if ac[i]:
                s += ac[i] * b[k - i]
        b.append(-s * inv0)
    return Series(b)


def ps_shift_down(a: Series) -> Series:
    """Divide by z. The valid order drops by one."""
    if a.coeffs[0] != 0:
        raise NonzeroConstantTerm(f"constant term {a.coeffs[0]} is not zero; cannot divide by z")
    if a.valid_order == 0:
        # only the (zero) constant term is known, so nothing survives
        raise OrderExceeded("dividing an order-0 series by z leaves no valid coefficient")
    return Series(a.coeffs[1:])


def ps_shift_up(a: Series) -> Series:
    """Multiply by z. The valid order grows by one."""
    return Series((ZERO,) + a.coeffs)


def const_term(a: Series) -> Fraction:
    return a.coeffs[0]


def ps_eq_to_order(a: Series, b: Series, m: int) -> bool:
    if m > a.valid_order or m > b.valid_order:
        raise OrderExceeded(
            f"comparison through z^{m} exceeds valid orders {a.valid_order}, {b.valid_order}"
        )
    return a.coeffs[: m + 1] == b.coeffs[: m + 1]


def first_difference(a: Series, b: Series, m: int | None = None):
    """Lowest exponent where ``a`` and ``b`` differ (through z^m), else None."""
    n = _common(a, b) if m is None else m
    for i in range(n + 1):
        if a[i] != b[i]:
            return i
    return None

