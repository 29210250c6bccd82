"""C-fraction machinery for z/G(z) = z/(a_1 + z/(a_2 + z/(a_3 + ...))).

Coefficients come from two independent routes that are meant to agree:

* :func:`extract_coeffs` runs the recursion z*s_{i+1} = s_{i-1} - a_{i+1}*s_i
  on power series, choosing each a_{i+1} to kill the constant term;
* :func:`closed_a` evaluates the closed forms for a_{2k} and a_{2k+1}.

The closed forms never divide by y. The product y^(k-1) (x/y;q)_(k-1) is
evaluated as Q_k = prod_{j<k-1} (y - x q^j) (see :func:`qfrac.arith.cross_poch`),
and (yq)^(k-1) (x/y;q)_(k-1) as q^(k-1) Q_k, so y = 0 is an ordinary point.

The two printed specialisations (y = 0 and x = 0) are kept verbatim in
:func:`closed_a_y0_printed` and :func:`closed_a_x0_printed` so that they can be
compared against the general formula rather than silently agreeing with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .arith import ONE, ParamPoint, cross_poch, pochhammer, q_binom2
from .errors import (
    Breakdown,
    InadmissiblePoint,
    InsufficientOrder,
    WrongSpecialization,
    ZeroConstantTerm,
)
from .series import Series, const_term, ps_mul, ps_recip, ps_scale, ps_shift_down, ps_shift_up, ps_sub

EXTRACTED = "extracted"
CLOSED_GENERAL = "closed_general"
CLOSED_Y0_PRINTED = "closed_y0_printed"
CLOSED_X0_PRINTED = "closed_x0_printed"
PROVENANCES = (EXTRACTED, CLOSED_GENERAL, CLOSED_Y0_PRINTED, CLOSED_X0_PRINTED)


@dataclass(frozen=True)
class CFCoeffs:
    """Partial denominators a_1..a_M with where they came from.

    A zero partial denominator is a breakdown and is refused at construction.
    """

    values: tuple
    provenance: str
    point: Optional[ParamPoint] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        for i, v in enumerate(self.values, start=1):
            if v == 0:
                raise Breakdown(i, "zero partial denominator")
        if self.provenance == CLOSED_GENERAL and self.values and self.values[0] != 1:
            raise ValueError("closed-form coefficients must start with a_1 = 1")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        """1-based access: ``coeffs[1]`` is a_1."""
        if not 1 <= i <= len(self.values):
            raise IndexError(f"a_{i} not available (have a_1..a_{len(self.values)})")
        return self.values[i - 1]


@dataclass(frozen=True)
class ExtractionState:
    """The pair (s_{i-1}, s_i) after i recursion levels."""

    s_prev: Series
    s_curr: Series
    index: int

    def step(self) -> tuple[Fraction, ExtractionState]:
        """Produce a_{i+1} and the state holding (s_i, s_{i+1})."""
        c = const_term(self.s_curr)
        if c == 0:
            raise Breakdown(self.index + 1)
        a = const_term(self.s_prev) / c
        nxt = ps_shift_down(ps_sub(self.s_prev, ps_scale(a, self.s_curr)))
        return a, ExtractionState(self.s_curr, nxt, self.index + 1)


def extract_coeffs(s0: Series, s1: Series, M: int, a1=ONE, point: Optional[ParamPoint] = None) -> CFCoeffs:
    """a_1..a_M from the starting pair (s_0, s_1).

    a_1 is not produced by the recursion; it is the constant term of G (here
    supplied as ``a1``, equal to 1 for every G of the form sum (y;q)_n/(x;q)_n).
    Each later a_{i+1} is const(s_{i-1}) / const(s_i). Both inputs need valid
    order at least M.
    """
    if M < 1:
        raise ValueError("M must be positive")
    have = min(s0.valid_order, s1.valid_order)
    if have < M:
        raise InsufficientOrder(f"extracting a_1..a_{M} needs series of valid order >= {M}, got {have}")
    values = [Fraction(a1)]
    state = ExtractionState(s0, s1, 1)
    for _ in range(M - 1):
        a, state = state.step()
        values.append(a)
    return CFCoeffs(tuple(values), EXTRACTED, point)


def expand_reciprocal(f: Series, M: int, point: Optional[ParamPoint] = None) -> CFCoeffs:
    """C-fraction coefficients of z/f for any series with f(0) != 0.

    Seeds the recursion with (s_{-1}, s_0) = (f, 1), so a_1 = f(0) and
    s_1 = (f - a_1)/z.
    """
    if f.valid_order < M:
        raise InsufficientOrder(f"extracting a_1..a_{M} needs valid order >= {M}, got {f.valid_order}")
    if const_term(f) == 0:
        raise Breakdown(1, "series has zero constant term")
    state = ExtractionState(f, Series.unit(f.valid_order), 0)
    values = []
    for _ in range(M):
        a, state = state.step()
        values.append(a)
    return CFCoeffs(tuple(values), EXTRACTED, point)


def extract_for_point(point: ParamPoint, M: int, order: Optional[int] = None) -> CFCoeffs:
    from .qseries import build_s0_s1

    s0, s1 = build_s0_s1(point, M if order is None else order)
    return extract_coeffs(s0, s1, M, point=point)


def _nonzero(value: Fraction, factor: str, point: ParamPoint) -> Fraction:
    if value == 0:
        raise InadmissiblePoint(factor, f"at q={point.q}, x={point.x}, y={point.y}")
    return value


def _q_k(point: ParamPoint, k: int) -> Fraction:
    q, x, y = point.q, point.x, point.y
    t = x
    for j in range(k - 1):
        if y == t:
            raise InadmissiblePoint(f"y-x*q^{j}", f"at q={q}, x={x}, y={y}")
        t *= q
    return cross_poch(x, y, q, k)


def closed_a(i: int, point: ParamPoint) -> Fraction:
    """Closed-form partial denominator a_i (a_1 = 1).

    a_{2k}   =  (x;q)_{k-1} (1 - x q^{2k-2}) (yq;q)_{k-1} / ((1-y) q^{k-1} Q_k (q;q)_{k-1})
    a_{2k+1} = -(1-y) Q_k (1 - x q^{2k-1}) (q;q)_{k-1} / ((x;q)_k (yq;q)_k)
    """
    if i < 1:
        raise ValueError("coefficient index starts at 1")
    if i == 1:
        return ONE
    q, x, y = point.q, point.x, point.y
    k, odd = divmod(i, 2)
    qq = pochhammer(q, q, k - 1)
    if not odd:
        den = (
            _nonzero(1 - y, "1-y", point)
            * _nonzero(q ** (k - 1), "q", point)
            * _q_k(point, k)
            * _nonzero(qq, f"(q;q)_{k - 1}", point)
        )
        num = pochhammer(x, q, k - 1) * (1 - x * q ** (2 * k - 2)) * pochhammer(y * q, q, k - 1)
        return num / den
    den = _nonzero(pochhammer(x, q, k), f"(x;q)_{k}", point) * _nonzero(
        pochhammer(y * q, q, k), f"(yq;q)_{k}", point
    )
    return -(1 - y) * _q_k(point, k) * (1 - x * q ** (2 * k - 1)) * qq / den


def closed_a_y0_printed(i: int, point: ParamPoint) -> Fraction:
    """The y = 0 specialisation exactly as printed.

    a_{2k}   =  (x;q)_{k-1} (1 - x q^{2k-2}) / (x^{k-1} q^C(k,2) (q;q)_{k-1})
    a_{2k+1} = -x^{k-1} q^C(k-1,2) (1 - x q^{2k-1}) (q;q)_{k-1} / (x;q)_k

    For k >= 2 this differs from :func:`closed_a` at y = 0 by the factor (-1)^(k-1).
    """
    if point.y != 0:
        raise WrongSpecialization(f"y=0 formula evaluated at y={point.y}")
    if i < 1:
        raise ValueError("coefficient index starts at 1")
    if i == 1:
        return ONE
    q, x = point.q, point.x
    k, odd = divmod(i, 2)
    qq = pochhammer(q, q, k - 1)
    if not odd:
        den = (
            _nonzero(x ** (k - 1), "x", point)
            * _nonzero(q ** q_binom2(k), "q", point)
            * _nonzero(qq, f"(q;q)_{k - 1}", point)
        )
        return pochhammer(x, q, k - 1) * (1 - x * q ** (2 * k - 2)) / den
    den = _nonzero(pochhammer(x, q, k), f"(x;q)_{k}", point)
    return -(x ** (k - 1)) * q ** q_binom2(k - 1) * (1 - x * q ** (2 * k - 1)) * qq / den


def closed_a_x0_printed(i: int, point: ParamPoint) -> Fraction:
    """The x = 0 specialisation exactly as printed.

    a_{2k}   =  (yq;q)_{k-1} / ((1-y) (yq)^{k-1} (q;q)_{k-1})
    a_{2k+1} = -(1-y) y^{k-1} (q;q)_{k-1} / (yq;q)_k
    """
    if point.x != 0:
        raise WrongSpecialization(f"x=0 formula evaluated at x={point.x}")
    if i < 1:
        raise ValueError("coefficient index starts at 1")
    if i == 1:
        return ONE
    q, y = point.q, point.y
    k, odd = divmod(i, 2)
    qq = pochhammer(q, q, k - 1)
    if not odd:
        den = (
            _nonzero(1 - y, "1-y", point)
            * _nonzero((y * q) ** (k - 1), "yq", point)
            * _nonzero(qq, f"(q;q)_{k - 1}", point)
        )
        return pochhammer(y * q, q, k - 1) / den
    den = _nonzero(pochhammer(y * q, q, k), f"(yq;q)_{k}", point)
    return -(1 - y) * y ** (k - 1) * qq / den


_CLOSED = {
    CLOSED_GENERAL: closed_a,
    CLOSED_Y0_PRINTED: closed_a_y0_printed,
    CLOSED_X0_PRINTED: closed_a_x0_printed,
}


def closed_coeffs(point: ParamPoint, M: int, provenance: str = CLOSED_GENERAL) -> CFCoeffs:
    fn = _CLOSED[provenance]
    return CFCoeffs(tuple(fn(i, point) for i in range(1, M + 1)), provenance, point)


def _values(coeffs) -> tuple:
    return coeffs.values if isinstance(coeffs, CFCoeffs) else tuple(coeffs)


def numerators_denominators(coeffs, m: int, order: int) -> tuple[Series, Series]:
    """(h_m, k_m) from h_n = a_n h_{n-1} + z h_{n-2}, k_n = a_n k_{n-1} + z k_{n-2}.

    Seeds h_{-1} = 1, h_0 = 0, k_{-1} = 0, k_0 = 1. Both are polynomials in z of
    degree at most (m+1)//2, so ``order >= (m+1)//2`` returns them untruncated.
    """
    vals = _values(coeffs)
    if not 1 <= m <= len(vals):
        raise ValueError(f"convergent index {m} outside 1..{len(vals)}")
    h2, h1 = Series.unit(order), Series.zero(order)
    k2, k1 = Series.zero(order), Series.unit(order)
    for a in vals[:m]:
        h2, h1 = h1, ps_scale(a, h1) + ps_shift_up(h2).truncate(order)
        k2, k1 = k1, ps_scale(a, k1) + ps_shift_up(k2).truncate(order)
    return h1, k1


def convergent(coeffs, m: int, order: int) -> Series:
    """C_m = h_m / k_m as a power series through z^order."""
    h, k = numerators_denominators(coeffs, m, order)
    if const_term(k) == 0:
        raise ZeroConstantTerm(f"denominator of convergent C_{m} has zero constant term")
    return ps_mul(h, ps_recip(k))


def convergents(coeffs, order: int) -> Iterator[Series]:
    """C_1, C_2, ... for every available coefficient, sharing one recurrence pass."""
    vals = _values(coeffs)
    h2, h1 = Series.unit(order), Series.zero(order)
    k2, k1 = Series.zero(order), Series.unit(order)
    for m, a in enumerate(vals, start=1):
        h2, h1 = h1, ps_scale(a, h1) + ps_shift_up(h2).truncate(order)
        k2, k1 = k1, ps_scale(a, k1) + ps_shift_up(k2).truncate(order)
        if const_term(k1) == 0:
            raise ZeroConstantTerm(f"denominator of convergent C_{m} has zero constant term")
        yield ps_mul(h1, ps_recip(k1))


def evaluate_convergent(coeffs, m: int, z) -> Fraction:
    """Exact value h_m(z)/k_m(z) of the m-th convergent at a rational z."""
    h, k = numerators_denominators(coeffs, m, (m + 1) // 2 + 1)
    den = k.evaluate(z)
    if den == 0:
        raise ZeroDivisionError(f"convergent C_{m} has a pole at z={z}")
    return h.evaluate(z) / den


def z_over(f: Series) -> Series:
    """z / f as a series valid through z^(order(f)+1)."""
    return ps_shift_up(ps_recip(f))

