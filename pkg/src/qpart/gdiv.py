"""Generalized Euclidean division, GCD and modular inverses in the ring
of integer-valued quasi-polynomials.

Division of f by g (eventually positive) produces a quotient that agrees
pointwise with floor(f(n)/g(n)) and a remainder in [0, |g(n)|) for all n
above the result boundary.  Construction: rational long division gives
f = q*g + s with deg s < deg g; writing q over a common denominator D and
splitting by residue class, q(t*m + j) = A_j(m) + c_j/D with A_j integer.
Since s(n)/g(n) -> 0, the floor is A_j(m) plus a correction that is -1
exactly when c_j = 0 and s(n)/g(n) approaches 0 from below.  The boundary
makes |s/g| smaller than every fractional gap and pins all signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantViolation, NotCoprimeError
from .intpoly import PolyZ, divide_q, stable_bound
from .quasipoly import (
    QpLike,
    QuasiPoly,
    assemble,
    scaled_poly_classes,
)

_TIGHTEN_STEPS = 4096


@dataclass(frozen=True)
class DivResult:
    quotient: QuasiPoly
    remainder: QuasiPoly


def _tightened_boundary(
    f: PolyZ, g: PolyZ, t: int, quo: Sequence[PolyZ], rem: Sequence[PolyZ], C: int
) -> int:
    # Walk the safe bound down while the division identity verifiably holds
    # at n = C; never below 1.  Each step is proven by direct evaluation.
    for _ in range(_TIGHTEN_STEPS):
        if C <= 1:
            break
        n = C
        gv = g.eval(n)
        if gv == 0:
            break
        qv = quo[n % t].eval(n // t)
        rv = rem[n % t].eval(n // t)
        if qv * gv + rv == f.eval(n) and 0 <= rv < abs(gv):
            C -= 1
        else:
            break
    return C


def gdiv_poly(f: PolyZ, g: PolyZ) -> DivResult:
    """Divide f by g in Z[x] with quotient and remainder in the ring;
    pointwise this is integer division with remainder in [0, |g(n)|)."""
    if g.is_zero:
        raise DomainError("division by zero polynomial")
    if g.eventual_sign() < 0:
        res = gdiv_poly(f, -g)
        return DivResult(-res.quotient, res.remainder)

    q, s = divide_q(f, g)
    D = q.den
    t, rows = scaled_poly_classes(q.numerator_poly(), D, allow_fractional_const=True)
    s_int = s.numerator_poly()  # s = s_int / s.den, s.den > 0
    s_sign = s_int.eventual_sign()

    quo_comps: list[PolyZ] = []
    rem_comps: list[PolyZ] = []
    gap = Fraction(1)
    for j, (A, frac) in enumerate(rows):
        if frac > 0:
            delta = 0
            gap = min(gap, Fraction(frac, D), 1 - Fraction(frac, D))
        else:
            delta = -1 if s_sign < 0 else 0
        qc = A + delta
        quo_comps.append(qc)
        rem_comps.append(f.compose_affine(t, j) - g.compose_affine(t, j) * qc)

    signs = [g] if s_int.is_zero else [g, s_int]
    ratios = [] if s_int.is_zero else [(s_int, g, gap * s.den)]
    C = max(1, stable_bound(signs, ratios))
    C = _tightened_boundary(f, g, t, quo_comps, rem_comps, C)
    return DivResult(QuasiPoly(t, C, quo_comps), QuasiPoly(t, C, rem_comps))


def gdiv_R(f: QpLike, g: QpLike) -> DivResult:
    """Division in the ring: per residue class of the common period; where
    the divisor class is identically zero, quotient 0 and remainder f."""
    ff = QuasiPoly.coerce(f)
    gg = QuasiPoly.coerce(g)
    T = math.lcm(ff.period, gg.period)
    ff, gg = ff.refine(T), gg.refine(T)
    quo_parts: list[QuasiPoly] = []
    rem_parts: list[QuasiPoly] = []
    for i in range(T):
        gi = gg.components[i]
        if gi.is_zero:
            quo_parts.append(QuasiPoly.zero())
            rem_parts.append(QuasiPoly.from_poly(ff.components[i]))
        else:
            res = gdiv_poly(ff.components[i], gi)
            quo_parts.append(res.quotient)
            rem_parts.append(res.remainder)
    quotient = assemble(T, quo_parts)
    remainder = assemble(T, rem_parts)
    C = max(
        quotient.lower_boundary,
        remainder.lower_boundary,
        ff.lower_boundary,
        gg.lower_boundary,
    )
    return DivResult(quotient.with_boundary(C), remainder.with_boundary(C))


def quo(f: QpLike, g: QpLike) -> QuasiPoly:
    return gdiv_R(f, g).quotient


def rem(f: QpLike, g: QpLike) -> QuasiPoly:
    return gdiv_R(f, g).remainder


def quo_exact(f: QpLike, g: QpLike) -> QuasiPoly:
    """Quotient of an exact division; a nonzero remainder is a defect."""
    res = gdiv_R(f, g)
    if not res.remainder.is_zero:
        raise InvariantViolation(f"expected exact division, remainder {res.remainder!r}")
    return res.quotient


def divides(g: QpLike, f: QpLike) -> bool:
    """True iff g(n) | f(n) for every n above the boundaries."""
    gg = QuasiPoly.coerce(g)
    if any(c.is_zero for c in gg.components):
        raise DomainError("divisor vanishes identically on a residue class")
    return gdiv_R(f, gg).remainder.is_zero


def _gcd_pair(a: QuasiPoly, b: QuasiPoly) -> QuasiPoly:
    if b.is_zero:
        return abs(a)
    if a.is_zero:
        return abs(b)
    T = math.lcm(a.period, b.period)
    if T > 1:
        aa, bb = a.refine(T), b.refine(T)
        parts = [
            _gcd_pair(
                QuasiPoly.from_poly(aa.components[i]),
                QuasiPoly.from_poly(bb.components[i]),
            )
            for i in range(T)
        ]
        out = assemble(T, parts)
        return out.with_boundary(
            max(out.lower_boundary, a.lower_boundary, b.lower_boundary)
        )
    res = gdiv_poly(a.components[0], b.components[0])
    if res.remainder.is_zero:
        return abs(b).with_boundary(res.remainder.lower_boundary)
    out = _gcd_pair(b.refine(res.remainder.period), res.remainder)
    return out.with_boundary(max(out.lower_boundary, res.remainder.lower_boundary))


def ggcd(fs: Sequence[QpLike]) -> QuasiPoly:
    """The nonnegative greatest common divisor; pointwise it equals the
    integer gcd of the values.  Zero inputs are dropped (gcd(f, 0) = |f|)."""
    items = [QuasiPoly.coerce(f) for f in fs]
    if not items:
        raise DomainError("ggcd of an empty list")
    nonzero = [f for f in items if not f.is_zero]
    if not nonzero:
        raise DomainError("ggcd of all-zero inputs")
    d = abs(nonzero[0])
    for f in nonzero[1:]:
        d = _gcd_pair(d, f)
    return d


def _exgcd_pair(
    a: QuasiPoly, b: QuasiPoly
) -> tuple[QuasiPoly, QuasiPoly, QuasiPoly]:
    """(d, u, v) with u*a + v*b = d = nonnegative gcd of a and b."""
    if b.is_zero:
        return abs(a), a.eventual_sign_qp(), QuasiPoly.zero()
    if a.is_zero:
        return abs(b), QuasiPoly.zero(), b.eventual_sign_qp()
    T = math.lcm(a.period, b.period)
    if T > 1:
        aa, bb = a.refine(T), b.refine(T)
        triples = [
            _exgcd_pair(
                QuasiPoly.from_poly(aa.components[i]),
                QuasiPoly.from_poly(bb.components[i]),
            )
            for i in range(T)
        ]
        floor_c = max(a.lower_boundary, b.lower_boundary)
        d, u, v = (
            assemble(T, [tr[k] for tr in triples]).with_boundary(floor_c)
            for k in range(3)
        )
        return d, u, v
    res = gdiv_poly(a.components[0], b.components[0])
    if res.remainder.is_zero:
        sign_b = b.eventual_sign_qp()
        d = abs(b).with_boundary(res.remainder.lower_boundary)
        return d, QuasiPoly.zero(), sign_b
    d, u2, v2 = _exgcd_pair(b.refine(res.remainder.period), res.remainder)
    # a = Q*b + R, d = u2*b + v2*R  =>  d = v2*a + (u2 - v2*Q)*b
    return d, v2, u2 - v2 * res.quotient


def bezout(fs: Sequence[QpLike]) -> tuple[QuasiPoly, list[QuasiPoly]]:
    """The nonnegative gcd together with ring coefficients u_k such that
    sum f_k * u_k = gcd."""
    items = [QuasiPoly.coerce(f) for f in fs]
    if not items:
        raise DomainError("bezout of an empty list")
    if all(f.is_zero for f in items):
        raise DomainError("bezout of all-zero inputs")
    if len(items) == 1:
        return abs(items[0]), [items[0].eventual_sign_qp()]
    d, u, v = _exgcd_pair(items[0], items[1])
    coeffs = [u, v]
    for f in items[2:]:
        d, alpha, beta = _exgcd_pair(d, f)
        coeffs = [alpha * c for c in coeffs] + [beta]
    return d, coeffs


def inverse_mod(a: QpLike, b: QpLike) -> QuasiPoly:
    """u with a*u = 1 (mod b); requires ggcd(a, b) = 1.  The result is the
    representative with 0 <= u < |b|; zero when b is a unit."""
    aa = QuasiPoly.coerce(a)
    bb = QuasiPoly.coerce(b)
    d, u, _ = _exgcd_pair(aa, bb)
    if d != QuasiPoly.one():
        raise NotCoprimeError("arguments are not coprime in the ring")
    if abs(bb) == QuasiPoly.one():
        return QuasiPoly.zero()
    return gdiv_R(u, bb).remainder
