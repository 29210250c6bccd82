"""Randomised exact verification of the continued fraction for z/G(z).

Every identity is a rational function identity in (q, x, y). It is checked by
exact evaluation at sampled rational points; a single mismatch disproves it and
agreement at generic points certifies it with high probability. Each point's
report stands on its own as a certificate for that point.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .arith import ParamPoint, as_rational, require_poch
from .cfrac import (
    ExtractionState,
    closed_a,
    closed_a_x0_printed,
    closed_a_y0_printed,
    closed_coeffs,
    convergent,
    evaluate_convergent,
    extract_coeffs,
    z_over,
)
from .errors import Breakdown, SamplingExhausted
from .qseries import build_G, build_generalized_G, build_s, build_s0_s1, build_s_odd
from .series import Series, ps_eq_to_order, ps_scale, ps_shift_up, ps_sub

DEFAULT_HEIGHT = 64
MAX_TRIES = 1000


@dataclass
class Check:
    name: str
    index: int
    passed: bool
    lhs: Optional[str] = None
    rhs: Optional[str] = None

    def as_dict(self) -> dict:
        return {"check": self.name, "index": self.index, "passed": self.passed,
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerifyReport:
    point: ParamPoint
    M: int
    N: int
    seed: Optional[int] = None
    case: str = "general"
    checks: list = field(default_factory=list)
    deviations: list = field(default_factory=list)

    def record(self, name: str, index: int, lhs, rhs, passed: Optional[bool] = None) -> bool:
        """Add one (check, index) entry; both sides are kept verbatim."""
        if any(c.name == name and c.index == index for c in self.checks):
            raise ValueError(f"duplicate check entry ({name}, {index})")
        if passed is None:
            passed = lhs == rhs
        self.checks.append(Check(name, index, bool(passed), _fmt(lhs), _fmt(rhs)))
        return bool(passed)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self, full: bool = False) -> dict:
        out = {
            "case": self.case,
            "seed": self.seed,
            "point": self.point.as_dict(),
            "M": self.M,
            "N": self.N,
            "checks": len(self.checks),
            "failed": len(self.failures),
        }
        if full:
            out["entries"] = [c.as_dict() for c in self.checks]
        if self.deviations:
            out["deviations"] = self.deviations
        return out


def _fmt(v) -> Optional[str]:
    if v is None:
        return None
    if isinstance(v, Series):
        return "[" + ", ".join(str(c) for c in v.coeffs) + "]"
    return str(v)


# sampling

def _rand_rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def sample_point(seed: int, depth: int, *, x=None, y=None, height: int = DEFAULT_HEIGHT,
                 q_abs_below_one: bool = False) -> ParamPoint:
    """Deterministic admissible point drawn from ``random.Random(seed)``.

    Numerators and denominators are bounded by ``height`` before reduction.
    Passing ``x`` or ``y`` pins that coordinate (used for the x = 0 and y = 0
    families).
    """
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        q = _rand_rational(rng, height)
        if q in (0, 1, -1) or (q_abs_below_one and abs(q) >= 1):
            continue
        px = _rand_rational(rng, height) if x is None else as_rational(x)
        py = _rand_rational(rng, height) if y is None else as_rational(y)
        point = ParamPoint(q, px, py, depth)
        if point.admissible(depth):
            return point
    raise SamplingExhausted(f"no admissible point for seed {seed} after {MAX_TRIES} draws")


def point_seed(base_seed: int, j: int) -> int:
    """Independent per-point seed derived from the run seed."""
    digest = hashlib.sha256(f"qfrac:{base_seed}:{j}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# single-point checks

def theorem_depth(M: int, N: int) -> int:
    return max(M, N) + 2


def recursion_depth(K: int, N: int) -> int:
    return 2 * K + N + 2


def check_theorem(point: ParamPoint, M: int, N: int, seed: Optional[int] = None) -> VerifyReport:
    """Extraction against closed forms for a_1..a_M, and each convergent C_m
    against z/G through z^m."""
    if N < M:
        raise ValueError(f"order N={N} must be at least M={M}")
    report = VerifyReport(point, M, N, seed)
    closed = closed_coeffs(point, M)
    s0, s1 = build_s0_s1(point, N)
    extracted = extract_coeffs(s0, s1, M, point=point)
    for i in range(1, M + 1):
        report.record("theorem_a", i, extracted[i], closed[i])
    target = z_over(build_G(point, N))
    for m in range(1, M + 1):
        # agreement is only claimed through z^m; z^(m+1) is kept for the sharpness witness
        conv = convergent(closed, m, m + 1)
        ok = ps_eq_to_order(conv, target, m)
        report.record("convergent", m, conv.truncate(m), target.truncate(m), passed=ok)
    return report


def check_recursion(point: ParamPoint, K: int, N: int, seed: Optional[int] = None) -> VerifyReport:
    """z s_{i+1} = s_{i-1} - a_{i+1} s_i with explicit s_j, for i = 1..2K+1.

    i = 1 is the base step from the initial values; odd i+1 is the
    s_{2k-1} -> s_{2k+1} branch and even i+1 the s_{2k} -> s_{2k+2} branch.
    """
    report = VerifyReport(point, 2 * K + 2, N, seed, case="recursion")
    s = list(build_s0_s1(point, N))
    s += [build_s(i, point, N) for i in range(2, 2 * K + 3)]
    report.record("s1_initial_vs_odd_formula", 1, build_s_odd(0, point, N), s[1])
    for i, si in enumerate(s):
        report.record("s_const_nonzero", i, si[0], None, passed=si[0] != 0)
    for i in range(1, 2 * K + 2):
        a = closed_a(i + 1, point)
        lhs = ps_sub(s[i - 1], ps_scale(a, s[i]))
        rhs = ps_shift_up(s[i + 1]).truncate(N)
        if i == 1:
            name = "recursion_base"
        elif (i + 1) % 2:
            name = "recursion_odd"
        else:
            name = "recursion_even"
        report.record(name, i + 1, lhs, rhs)
    return report


def check_s1_consistency(point: ParamPoint, N: int, seed: Optional[int] = None) -> VerifyReport:
    report = VerifyReport(point, 1, N, seed, case="s1")
    _, s1 = build_s0_s1(point, N)
    report.record("s1_initial_vs_odd_formula", 1, build_s_odd(0, point, N), s1)
    return report


def _special_ratio_expected(i: int) -> Fraction:
    """Printed/true ratio observed for the y = 0 family: (-1)^(k-1) at i = 2k, 2k+1."""
    if i == 1:
        return Fraction(1)
    k = i // 2
    return Fraction((-1) ** (k - 1))


def check_x0(point: ParamPoint, M: int, N: int, seed: Optional[int] = None) -> VerifyReport:
    report = VerifyReport(point, M, N, seed, case="x0")
    s0, s1 = build_s0_s1(point, N)
    extracted = extract_coeffs(s0, s1, M, point=point)
    for i in range(1, M + 1):
        general = closed_a(i, point)
        printed = closed_a_x0_printed(i, point)
        report.record("x0_extracted_vs_closed", i, extracted[i], general)
        report.record("x0_printed_vs_closed", i, printed, general)
        if printed != general:
            report.deviations.append(_deviation(i, printed, extracted[i]))
    return report


def check_y0(point: ParamPoint, M: int, N: int, seed: Optional[int] = None) -> VerifyReport:
    """y = 0: extraction must equal the general closed form; the printed
    specialisation is compared by ratio and every index where it differs is
    listed in ``deviations``."""
    report = VerifyReport(point, M, N, seed, case="y0")
    s0, s1 = build_s0_s1(point, N)
    extracted = extract_coeffs(s0, s1, M, point=point)
    for i in range(1, M + 1):
        report.record("y0_extracted_vs_closed", i, extracted[i], closed_a(i, point))
        printed = closed_a_y0_printed(i, point)
        ratio = printed / extracted[i]
        report.record("y0_printed_ratio", i, ratio, _special_ratio_expected(i))
        if ratio != 1:
            report.deviations.append(_deviation(i, printed, extracted[i]))
    return report


def _deviation(i: int, printed, extracted) -> dict:
    return {"index": i, "printed": str(printed), "extracted": str(extracted),
            "ratio": str(Fraction(printed) / Fraction(extracted))}


def check_specializations(M: int, N: int, base_seed: int, points: int = 20) -> list:
    """Reports for ``points`` random x = 0 points followed by ``points`` y = 0 points."""
    depth = theorem_depth(M, N)
    reports = []
    for case, pin, check in (("x0", {"x": 0}, check_x0), ("y0", {"y": 0}, check_y0)):
        for j in range(points):
            seed = point_seed(base_seed, j)
            reports.append(check(sample_point(seed, depth, **pin), M, N, seed))
    return reports


# exploration and numerics

@dataclass(frozen=True)
class GeneralizedSpec:
    point: ParamPoint
    extra_numerator_params: tuple = ()
    extra_denominator_params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "extra_numerator_params",
                           tuple(as_rational(u) for u in self.extra_numerator_params))
        object.__setattr__(self, "extra_denominator_params",
                           tuple(as_rational(v) for v in self.extra_denominator_params))

    def require(self, order: int) -> None:
        q = self.point.q
        require_poch(self.point.x, q, order, "(x;q)")
        for j, v in enumerate(self.extra_denominator_params, start=1):
            require_poch(v, q, order, f"(v{j};q)")


def explore_generalized(spec: GeneralizedSpec, M: int) -> list:
    """Extracted a_1..a_M for G with extra Pochhammer factors; no claims made.

    Rows are ``{"i": i, "a": value}``. Extraction off the theorem's family may
    break down; the first such index yields ``{"i": i, "breakdown": message}``
    and ends the table.
    """
    spec.require(M)
    G = build_generalized_G(spec.point, M, spec.extra_numerator_params, spec.extra_denominator_params)
    state = ExtractionState(G, Series.unit(M), 0)
    rows = []
    for i in range(1, M + 1):
        try:
            a, state = state.step()
        except Breakdown as exc:
            rows.append({"i": i, "breakdown": str(exc)})
            break
        rows.append({"i": i, "a": a})
    return rows


def numeric_convergence_study(point: ParamPoint, z, m_max: int, terms: Optional[int] = None) -> list:
    """Convergents C_m(z) against a long partial sum S of the series z/G at z.

    Everything is exact. Each row holds C_m, |C_m - S|, and |T_m - S| where
    T_m is the Taylor polynomial of z/G through z^m.
    """
    z = as_rational(z)
    if abs(point.q) >= 1:
        raise ValueError(f"numeric study needs |q| < 1, got q={point.q}")
    terms = terms if terms is not None else max(4 * m_max, 40)
    if terms < m_max:
        raise ValueError("partial sum must have at least m_max terms")
    coeffs = closed_coeffs(point, m_max)
    series = z_over(build_G(point, terms))
    S = series.evaluate(z)
    rows = []
    for m in range(1, m_max + 1):
        c_m = evaluate_convergent(coeffs, m, z)
        t_m = series.truncate(m).evaluate(z)
        rows.append({"m": m, "convergent": c_m, "error": abs(c_m - S), "taylor_error": abs(t_m - S)})
    return rows


# multi-point driver

def _verify_one(args) -> VerifyReport:
    base_seed, j, M, N, K = args
    seed = point_seed(base_seed, j)
    point = sample_point(seed, max(theorem_depth(M, N), recursion_depth(K, N)))
    report = check_theorem(point, M, N, seed)
    if K > 0:
        rec = check_recursion(point, K, N, seed)
        report.checks.extend(rec.checks)
    return report


def run_points(task: Callable, jobs: Sequence, n_jobs: Optional[int] = None) -> list:
    """Map ``task`` over ``jobs``, in worker processes when ``n_jobs`` > 1.

    Results come back in input order whatever the worker count.
    """
    n_jobs = n_jobs or os.cpu_count() or 1
    if n_jobs <= 1 or len(jobs) <= 1:
        return [task(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(task, jobs, chunksize=max(1, len(jobs) // (4 * n_jobs))))


def run_verify(seed: int, points: int, M: int, N: int, K: Optional[int] = None,
               n_jobs: Optional[int] = None) -> list:
    """check_theorem plus check_recursion at ``points`` seeded points.

    K defaults to (M - 2) // 2, so the recursion covers every s_i with i <= M.
    """
    if K is None:
        K = max(0, (M - 2) // 2)
    jobs = [(seed, j, M, N, K) for j in range(points)]
    return run_points(_verify_one, jobs, n_jobs)


def summarize(reports: Iterable[VerifyReport]) -> dict:
    reports = list(reports)
    payload = json.dumps([r.as_dict(full=True) for r in reports], sort_keys=True)
    return {
        "points": len(reports),
        "checks": sum(len(r.checks) for r in reports),
        "failures": sum(len(r.failures) for r in reports),
        "deviations": sum(len(r.deviations) for r in reports),
        "sha256": hashlib.sha256(payload.encode()).hexdigest(),
    }
