from fractions import Fraction as F

import pytest

from oracles import naive_G, naive_poch
from qfrac.arith import ParamPoint, q_binom2
from qfrac.cfrac import closed_a
from qfrac.errors import InadmissiblePoint
from qfrac.qseries import (
    SeriesSpec,
    build_G,
    build_generalized_G,
    build_s,
    build_s0_s1,
    build_s_even,
    build_s_odd,
)
from qfrac.series import Series, ps_scale, ps_shift_up, ps_sub
from qfrac.verify import point_seed, sample_point

POINTS = [
    ParamPoint(F(1, 2), F(1, 3), F(1, 5)),
    ParamPoint(F(-3, 7), F(5, 2), F(-2, 9)),
    ParamPoint(F(7, 4), F(0), F(3, 8)),
    ParamPoint(F(2, 9), F(-11, 6), F(0)),
]


def literal_s_even(k, p, N):
    """s_{2k} straight from the formula, with naive products."""
    q, x, y = p.q, p.x, p.y
    pre = (-1) ** k * q ** q_binom2(k) / naive_poch(q, q, k - 1)
    return [
        pre * naive_poch(q ** (n + 1), q, k - 1) * naive_poch(y * q, q, n + k) / naive_poch(x * q**k, q, n + k)
        for n in range(N + 1)
    ]


def literal_s_odd(k, p, N):
    """s_{2k+1} with the literal y^k (x/y;q)_k (needs y != 0)."""
    q, x, y = p.q, p.x, p.y
    pre = (1 - y) * y**k * naive_poch(x / y, q, k) * (-1) ** k * q ** q_binom2(k + 1)
    return [
        pre * naive_poch(q ** (n + 1), q, k) * naive_poch(y * q ** (k + 1), q, n) / naive_poch(x, q, n + 2 * k + 1)
        for n in range(N + 1)
    ]


def test_G_examples(ref_point):
    assert build_G(ref_point, 2) == Series([1, F(6, 5), F(162, 125)])
    assert build_G(ref_point, 0) == Series([1])
    same = ParamPoint(F(3, 7), F(2, 5), F(2, 5))
    assert build_G(same, 6) == Series([1] * 7)


@pytest.mark.parametrize("p", POINTS)
def test_G_matches_term_formula(p):
    assert list(build_G(p, 10).coeffs) == naive_G(p.q, p.x, p.y, 10)


def test_G_rejects_vanishing_denominator():
    with pytest.raises(InadmissiblePoint, match=r"\(x;q\)_3"):
        build_G(ParamPoint(F(1, 2), F(4), F(1, 5)), 3)
    build_G(ParamPoint(F(1, 2), F(4), F(1, 5)), 2)


def test_s0_s1_examples(ref_point):
    s0, s1 = build_s0_s1(ref_point, 3)
    assert s0 == Series.unit(3)
    assert s1[0] == F(6, 5)
    assert s1[1] == F(162, 125)


@pytest.mark.parametrize("p", POINTS)
def test_s1_is_G_shifted(p):
    G = build_G(p, 9)
    _, s1 = build_s0_s1(p, 8)
    assert ps_shift_up(s1) == ps_sub(G, Series.unit(9))


def test_s_even_examples(ref_point):
    s2 = build_s_even(1, ref_point, 1)
    assert s2 == Series([F(-27, 25), F(-1539, 1375)])
    for k in range(1, 6):
        s = build_s_even(k, ref_point, 0)
        # all Pochhammer factors are positive here, so the sign is (-1)^k
        assert (s[0] > 0) == (k % 2 == 0)


def test_s_even_rejects_k_zero(ref_point):
    with pytest.raises(ValueError, match="k >= 1"):
        build_s_even(0, ref_point, 3)


def test_s_odd_examples(ref_point):
    s1 = build_s_odd(0, ref_point, 3)
    assert s1[0] == F(6, 5)
    assert s1 == build_s0_s1(ref_point, 3)[1]
    s3 = build_s_odd(1, ref_point, 0)
    # prefactor (1-y) Q_2 (-1) q = 4/75, times 1/(x;q)_3 at n = 0
    assert s3[0] == F(4, 75) * naive_poch(F(1, 2), F(1, 2), 1) / naive_poch(F(1, 3), F(1, 2), 3)


@pytest.mark.parametrize("p", POINTS)
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_s_even_matches_literal_formula(p, k):
    assert list(build_s_even(k, p, 9).coeffs) == literal_s_even(k, p, 9)


@pytest.mark.parametrize("p", [pt for pt in POINTS if pt.y != 0])
@pytest.mark.parametrize("k", [0, 1, 2, 4])
def test_s_odd_matches_literal_formula(p, k):
    assert list(build_s_odd(k, p, 9).coeffs) == literal_s_odd(k, p, 9)


def test_builders_handle_q_roots_of_unity():
    # the window update divides by 1 - q^{n+1}; q = -1 must fall back to the product
    p = ParamPoint(F(-1), F(3), F(5))
    assert list(build_s_even(1, p, 5).coeffs) == literal_s_even(1, p, 5)
    assert list(build_s_odd(1, p, 5).coeffs) == literal_s_odd(1, p, 5)


@pytest.mark.parametrize("j", range(5))
def test_recursion_identity_at_random_points(j):
    p = sample_point(point_seed(11, j), 30)
    N = 8
    s = [build_s(i, p, N) for i in range(0, 10)]
    for i in range(1, 9):
        lhs = ps_sub(s[i - 1], ps_scale(closed_a(i + 1, p), s[i]))
        assert lhs[0] == 0
        assert lhs == ps_shift_up(s[i + 1]).truncate(N)
    assert all(si[0] != 0 for si in s)


def test_series_spec_dispatch(ref_point):
    assert SeriesSpec("G", ref_point, 2).build() == build_G(ref_point, 2)
    assert SeriesSpec("s_even", ref_point, 2, k=2).build() == build_s_even(2, ref_point, 2)
    assert SeriesSpec("s_odd", ref_point, 2, k=1).build() == build_s_odd(1, ref_point, 2)
    with pytest.raises(ValueError):
        SeriesSpec("H", ref_point, 2).build()


def test_generalized_G(ref_point):
    assert build_generalized_G(ref_point, 6) == build_G(ref_point, 6)
    assert build_generalized_G(ref_point, 6, upper=[F(0)]) == build_G(ref_point, 6)
    u, v = F(1, 7), F(-2, 3)
    g = build_generalized_G(ref_point, 5, upper=[u], lower=[v])
    q, x, y = ref_point.q, ref_point.x, ref_point.y
    for n in range(6):
        assert g[n] == naive_poch(u, q, n) * naive_poch(y, q, n) / (naive_poch(v, q, n) * naive_poch(x, q, n))
    with pytest.raises(InadmissiblePoint):
        build_generalized_G(ref_point, 5, lower=[F(2)])
