"""Exact continued-fraction expansion of z/G(z) for G(z) = sum (y;q)_n z^n / (x;q)_n."""

__version__ = "0.1.0"

from .arith import ParamPoint, Rational, cross_poch, parse_rational, pochhammer, q_binom2, q_pow
from .cfrac import (
    CFCoeffs,
    closed_a,
    closed_a_x0_printed,
    closed_a_y0_printed,
    closed_coeffs,
    convergent,
    expand_reciprocal,
    extract_coeffs,
)
from .errors import Breakdown, InadmissiblePoint, QFracError
from .qseries import build_G, build_s0_s1, build_s_even, build_s_odd
from .series import Series
