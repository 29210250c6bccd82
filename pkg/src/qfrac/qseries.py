"""Concrete q-series at an exact parameter point.

G(z) = sum_n (y;q)_n / (x;q)_n z^n, the initial pair s_0, s_1 of the
continued-fraction recursion, and the closed forms of s_{2k} and s_{2k+1}.
Every builder checks the denominator factors it needs before evaluating and
names the one that vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import ONE, ParamPoint, cross_poch, pochhammer, q_binom2, require_poch
from .series import Series


def build_G(point: ParamPoint, order: int) -> Series:
    q, x, y = point.q, point.x, point.y
    require_poch(x, q, order, "(x;q)")
    coeffs = [ONE]
    term = ONE
    qn = ONE
    for _ in range(order):
        term = term * (1 - y * qn) / (1 - x * qn)
        coeffs.append(term)
        qn *= q
    return Series(coeffs)


def build_generalized_G(
    point: ParamPoint,
    order: int,
    upper: Sequence = (),
    lower: Sequence = (),
) -> Series:
    """G with extra factors prod (u;q)_n in the numerator and prod (v;q)_n below."""
    q = point.q
    require_poch(point.x, q, order, "(x;q)")
    for j, v in enumerate(lower):
        require_poch(v, q, order, f"(v{j + 1};q)")
    ups = [point.y, *upper]
    downs = [point.x, *lower]
    coeffs = [ONE]
    term = ONE
    qn = ONE
    for _ in range(order):
        for u in ups:
            term *= 1 - u * qn
        for v in downs:
            term /= 1 - v * qn
        coeffs.append(term)
        qn *= q
    return Series(coeffs)


def build_s0_s1(point: ParamPoint, order: int) -> tuple[Series, Series]:
    """The recursion's starting pair: s_0 = 1 and s_1 = (G - 1)/z."""
    q, x, y = point.q, point.x, point.y
    require_poch(x, q, order + 1, "(x;q)")
    s1 = []
    term = ONE
    qn = ONE
    for _ in range(order + 1):
        term = term * (1 - y * qn) / (1 - x * qn)
        s1.append(term)
        qn *= q
    return Series.unit(order), Series(s1)


def _next_window(window, q, n: int, length: int):
    """(q^{n+2};q)_length from window = (q^{n+1};q)_length."""
    d = 1 - q ** (n + 1)
    if d == 0:
        return pochhammer(q ** (n + 2), q, length)
    return window * (1 - q ** (n + 1 + length)) / d


def build_s_even(k: int, point: ParamPoint, order: int) -> Series:
    """s_{2k} for k >= 1.

    (-1)^k q^C(k,2) / (q;q)_{k-1} * sum_n z^n (q^{n+1};q)_{k-1} (yq;q)_{n+k} / (xq^k;q)_{n+k}

    k = 0 is refused: the formula would need (q;q)_{-1}; s_0 comes from
    :func:`build_s0_s1`.
    """
    if k < 1:
        raise ValueError("build_s_even is defined for k >= 1 only; use build_s0_s1 for s_0")
    q, x, y = point.q, point.x, point.y
    require_poch(q, q, k - 1, "(q;q)")
    xqk = x * q**k
    require_poch(xqk, q, order + k, "(xq^k;q)")
    pre = (-1) ** k * q ** q_binom2(k) / pochhammer(q, q, k - 1)
    # running values of (q^{n+1};q)_{k-1}, (yq;q)_{n+k}, (xq^k;q)_{n+k}
    window = pochhammer(q, q, k - 1)
    num = pochhammer(y * q, q, k)
    den = pochhammer(xqk, q, k)
    coeffs = []
    for n in range(order + 1):
        coeffs.append(pre * window * num / den)
        window = _next_window(window, q, n, k - 1)
        num *= 1 - y * q ** (n + k + 1)
        den *= 1 - x * q ** (n + 2 * k)
    return Series(coeffs)


def build_s_odd(k: int, point: ParamPoint, order: int) -> Series:
    """s_{2k+1} for k >= 0.

    (1-y) y^k (x/y;q)_k (-1)^k q^C(k+1,2)
        * sum_n z^n (q^{n+1};q)_k (yq^{k+1};q)_n / (x;q)_{n+2k+1},
    with y^k (x/y;q)_k evaluated as cross_poch(x, y, q, k+1).
    """
    if k < 0:
        raise ValueError("build_s_odd needs k >= 0")
    q, x, y = point.q, point.x, point.y
    require_poch(x, q, order + 2 * k + 1, "(x;q)")
    pre = (1 - y) * cross_poch(x, y, q, k + 1) * (-1) ** k * q ** q_binom2(k + 1)
    # running values of (q^{n+1};q)_k, (yq^{k+1};q)_n, (x;q)_{n+2k+1}
    window = pochhammer(q, q, k)
    num = ONE
    den = pochhammer(x, q, 2 * k + 1)
    coeffs = []
    for n in range(order + 1):
        coeffs.append(pre * window * num / den)
        window = _next_window(window, q, n, k)
        num *= 1 - y * q ** (n + k + 1)
        den *= 1 - x * q ** (n + 2 * k + 1)
    return Series(coeffs)


def build_s(i: int, point: ParamPoint, order: int) -> Series:
    """s_i by index: s_0, s_1 from the initial values, the closed forms beyond."""
    if i < 0:
        raise ValueError("s_i needs i >= 0")
    if i <= 1:
        return build_s0_s1(point, order)[i]
    k, odd = divmod(i, 2)
    return build_s_odd(k, point, order) if odd else build_s_even(k, point, order)


@dataclass(frozen=True)
class SeriesSpec:
    kind: str  # "G", "s_even" or "s_odd"
    point: ParamPoint
    order: int
    k: int = 0

    def build(self) -> Series:
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if self.kind == "G":
            return build_G(self.point, self.order)
        if self.kind == "s_even":
            return build_s_even(self.k, self.point, self.order)
        if self.kind == "s_odd":
            return build_s_odd(self.k, self.point, self.order)
        raise ValueError(f"unknown series kind {self.kind!r}")

