"""Exact evaluation of the fractional-part sum

    S(r1, r2, r3; r4, r5) = sum_{x=r1}^{r2} ((r3 + r4*x) mod r5)

by direct iteration (the oracle), by a single-step block decomposition,
by one reciprocity step trading modulus r5 for g1 = r4 mod r5, and by the
full Euclid chain g_{-1}=r4 -> g_0=r5 -> g_1 -> ... -> g_h, which costs
O(log min(r4 mod r5, r5)) arithmetic operations however wide the window.

sum_fast_symbolic runs the same chain with quasi-polynomial arguments,
replacing integer division/gcd/inverse with their ring counterparts and
splitting residue classes whenever a branch predicate (window emptiness,
degenerate modulus, block-span width, divisibility) differs between
classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateModulusError, DomainError, InvariantViolation
from .gdiv import gdiv_R, ggcd, inverse_mod, quo, quo_exact, rem
from .intpoly import PolyZ
from .quasipoly import (
    QpLike,
    QuasiPoly,
    QuasiRational,
    assemble,
    restrict,
    sign_stability_boundary,
)


@dataclass(frozen=True)
class FracSumInstance:
    r1: int
    r2: int
    r3: int
    r4: int
    r5: int

    def __post_init__(self):
        if self.r5 < 1:
            raise DomainError("modulus r5 must be >= 1")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.r1, self.r2, self.r3, self.r4, self.r5)


def mod_pos(a: int, b: int) -> int:
    """a mod b in [0, b); floor semantics for negative a."""
    if b < 1:
        raise DomainError("modulus must be positive")
    return a % b


def sum_bruteforce(inst: FracSumInstance) -> int:
    """Direct term-by-term evaluation; the oracle for everything else."""
    r1, r2, r3, r4, r5 = inst.as_tuple()
    g1 = r4 % r5
    return sum((r3 + g1 * x) % r5 for x in range(r1, r2 + 1))


def _window_sum(a: int, b: int, c: int, g: int) -> int:
    """sum_{x=a}^{b} (c + g*x), 0 when b < a."""
    if b < a:
        return 0
    w = b - a + 1
    return w * c + g * ((a + b) * w // 2)


def _two_block(r1: int, r2: int, r3: int, g1: int, r5: int) -> int:
    """S over a window meeting at most two residue blocks (it - i0 <= 1)."""
    if r1 > r2:
        return 0
    i0 = (r3 + g1 * r1) // r5
    it = (r3 + g1 * r2) // r5
    mid = ((i0 + 1) * r5 - r3) // g1  # last x of block i0
    first = _window_sum(r1, min(mid, r2), r3 - i0 * r5, g1)
    second = _window_sum(mid + 1, r2, r3 - it * r5, g1)
    return first + second


def _solution_count(r3: int, g1: int, r5: int, i0: int, it: int) -> int:
    """Number of i in [i0+1, it] with (i*r5 - r3)/g1 an integer."""
    d = math.gcd(r5, g1)
    if r3 % d:
        return 0
    tg = g1 // d
    if tg == 1:
        rr = 0
    else:
        rr = ((r3 // d - (i0 + 1) * (r5 // d)) * pow(r5 // d, -1, tg)) % tg
    return (it - i0 - 1 - rr) // tg + 1


def lemma_step(inst: FracSumInstance) -> int:
    """Single-step evaluation: split the window by the value of
    floor((r3 + g1*x)/r5) and sum each block as an arithmetic series,
    correcting by -q*r5 for block boundaries that land on integers.
    Costs O(it - i0) block iterations; windows meeting fewer than two
    block boundaries are summed directly."""
    r1, r2, r3, r4, r5 = inst.as_tuple()
    g1 = r4 % r5
    if g1 == 0:
        raise DegenerateModulusError("r4 is a multiple of r5")
    if r1 > r2:
        return 0
    i0 = (r3 + g1 * r1) // r5
    it = (r3 + g1 * r2) // r5
    if it - i0 < 2:
        return _two_block(r1, r2, r3, g1, r5)
    first_end = ((i0 + 1) * r5 - r3) // g1
    total = _window_sum(r1, first_end, r3 - i0 * r5, g1)
    for i in range(i0 + 1, it):
        l1 = (i * r5 - r3) // g1
        l2 = ((i + 1) * r5 - r3) // g1
        total += _window_sum(l1 + 1, l2, r3 - i * r5, g1)
    last_start = (it * r5 - r3) // g1 + 1
    total += _window_sum(last_start, r2, r3 - it * r5, g1)
    q = _solution_count(r3, g1, r5, i0, it)
    if __debug__ and it - i0 <= 10_000:
        direct = sum(1 for i in range(i0 + 1, it + 1) if (i * r5 - r3) % g1 == 0)
        if direct != q:
            raise InvariantViolation(f"solution count {q} != direct count {direct}")
    return total - q * r5


def _reciprocity_terms(
    r1: int, r2: int, r3: int, g1: int, r5: int, i0: int, it: int
) -> tuple[int, int]:
    """(A, q) of the reciprocity identity for a window with it - i0 >= 2."""
    r1p, r2p = i0 + 2, it - 1
    q = _solution_count(r3, g1, r5, i0, it)
    low_edge = ((r1p - 1) * r5 - r3) // g1
    high_edge = ((r2p + 1) * r5 - r3) // g1
    wp = r2p - r1p + 1
    w = r2 - r1 + 1
    bracket = (
        Fraction(-low_edge + (r1p - 2) * (1 - r1) + q - high_edge + (r2p + 1) * r2)
        + Fraction(r3 * wp, g1)
        - Fraction(r5 * (r2p + r1p) * wp, 2 * g1)
    )
    a_val = w * r3 + Fraction(g1 * (r2 + r1) * w, 2) - r5 * bracket
    if a_val.denominator != 1:
        raise InvariantViolation("reciprocity correction is not an integer")
    return int(a_val), q


def reciprocity_step(inst: FracSumInstance) -> tuple[int, FracSumInstance]:
    """One modulus exchange: returns (A, next) with
    S(inst) + (r5/g1) * S(next) = A and next = (i0+2, it-1, -r3; r5, g1).
    For windows meeting fewer than two block boundaries the next window is
    empty and A is S(inst) itself, summed directly."""
    r1, r2, r3, r4, r5 = inst.as_tuple()
    g1 = r4 % r5
    if g1 == 0:
        raise DegenerateModulusError("r4 is a multiple of r5")
    i0 = (r3 + g1 * r1) // r5
    it = (r3 + g1 * r2) // r5
    nxt = FracSumInstance(i0 + 2, it - 1, -r3, r5, g1)
    if r1 > r2 or it - i0 < 2:
        return _two_block(r1, r2, r3, g1, r5), nxt
    a_val, _ = _reciprocity_terms(r1, r2, r3, g1, r5, i0, it)
    return a_val, nxt


@dataclass(frozen=True)
class EuclidChain:
    """Record of one chain evaluation: moduli g_{-1}, g_0, ..., windows per
    level, the per-step corrections A_k, how the descent ended, the directly
    summed tail, and the value S_0."""

    gs: tuple[int, ...]
    windows: tuple[tuple[int, int], ...]
    corrections: tuple[int, ...]
    halt: str  # "empty" | "degenerate" | "narrow"
    tail: int
    value: int

    @property
    def steps(self) -> int:
        """Number of reciprocity steps applied."""
        return len(self.corrections)


def build_chain(inst: FracSumInstance) -> EuclidChain:
    r1, r2, r3, r4, r5 = inst.as_tuple()
    gs = [r4, r5]
    windows = [(r1, r2)]
    corrections: list[int] = []
    while True:
        if r1 > r2:
            halt, tail = "empty", 0
            break
        g1 = r4 % r5
        if g1 == 0:
            halt, tail = "degenerate", (r2 - r1 + 1) * (r3 % r5)
            break
        i0 = (r3 + g1 * r1) // r5
        it = (r3 + g1 * r2) // r5
        if it - i0 < 2:
            halt, tail = "narrow", _two_block(r1, r2, r3, g1, r5)
            break
        a_val, _ = _reciprocity_terms(r1, r2, r3, g1, r5, i0, it)
        corrections.append(a_val)
        gs.append(g1)
        r1, r2, r3, r4, r5 = i0 + 2, it - 1, -r3, r5, g1
        windows.append((r1, r2))
    total = tail
    for a_val, g_here, g_next in reversed(list(zip(corrections, gs[1:], gs[2:]))):
        scaled = g_here * total
        if scaled % g_next:
            raise InvariantViolation("chain product not divisible by next modulus")
        total = a_val - scaled // g_next
    return EuclidChain(tuple(gs), tuple(windows), tuple(corrections), halt, tail, total)


def sum_fast(inst: FracSumInstance) -> int:
    """Evaluate S by the logarithmic Euclid chain; equals sum_bruteforce."""
    return build_chain(inst).value


# -- symbolic chain ----------------------------------------------------------


def _classify_positive(c: PolyZ) -> bool:
    return c.leading > 0


def _classify_zero(c: PolyZ) -> bool:
    return c.is_zero


def _classify_nonneg(c: PolyZ) -> bool:
    return c.is_zero or c.leading > 0


def _by_cases(
    args: Sequence[QuasiPoly],
    scrutinee: QuasiPoly,
    classify: Callable[[PolyZ], object],
    handler: Callable[..., QuasiPoly],
) -> QuasiPoly:
    """Evaluate handler(verdict, *args) when the verdict is the same on
    every residue class of scrutinee, otherwise restrict everything to each
    class, recurse, and reassemble.  The result boundary absorbs the
    scrutinee's sign-stability threshold so that verdicts reflect actual
    values wherever the representation claims validity."""
    verdicts = {classify(c) for c in scrutinee.components}
    if len(verdicts) == 1:
        out = handler(verdicts.pop(), *args)
    else:
        T = scrutinee.period
        parts = [
            _by_cases(
                [restrict(a, T, i) for a in args],
                restrict(scrutinee, T, i),
                classify,
                handler,
            )
            for i in range(T)
        ]
        out = assemble(T, parts)
    floor_c = max(
        out.lower_boundary,
        scrutinee.lower_boundary,
        sign_stability_boundary(scrutinee),
    )
    return out.with_boundary(floor_c)


def _sym_window_sum(a: QuasiPoly, b: QuasiPoly, c: QuasiPoly, g: QuasiPoly) -> QuasiPoly:
    """sum_{x=a}^{b} (c + g*x) in the ring, zero on empty classes."""

    def handler(nonempty, a, b, c, g):
        if not nonempty:
            return QuasiPoly.zero()
        w = b - a + 1
        return w * c + g * quo_exact((a + b) * w, 2)

    return _by_cases((a, b, c, g), b - a + 1, _classify_positive, handler)


def _sym_two_block(r1, r2, r3, r5, g1, i0, it) -> QuasiPoly:
    mid = quo((i0 + 1) * r5 - r3, g1)

    def handler(first_block_covers_window, r1, r2, r3, r5, g1, i0, it, mid):
        end_first = r2 if first_block_covers_window else mid
        first = _sym_window_sum(r1, end_first, r3 - i0 * r5, g1)
        second = _sym_window_sum(mid + 1, r2, r3 - it * r5, g1)
        return first + second

    return _by_cases(
        (r1, r2, r3, r5, g1, i0, it, mid), mid - r2, _classify_positive, handler
    )


def _sym_wide(rho_is_zero, r1, r2, r3, r5, g1, i0, it, d) -> QuasiPoly:
    if rho_is_zero:
        g1_red = quo_exact(g1, d)
        r5_red = quo_exact(r5, d)
        r3_red = quo_exact(r3, d)
        inv = inverse_mod(r5_red, g1_red)
        rr = rem((r3_red - (i0 + 1) * r5_red) * inv, g1_red)
        q = quo(it - i0 - 1 - rr, g1_red) + 1
    else:
        q = QuasiPoly.zero()
    r1p = i0 + 2
    r2p = it - 1
    low_edge = quo((r1p - 1) * r5 - r3, g1)
    high_edge = quo((r2p + 1) * r5 - r3, g1)
    wp = r2p - r1p + 1
    w = r2 - r1 + 1
    qr = QuasiRational.coerce
    bracket = (
        qr(-low_edge + (r1p - 2) * (1 - r1) + q - high_edge + (r2p + 1) * r2)
        + qr(r3 * wp) / qr(g1)
        - qr(r5 * (r2p + r1p) * wp) / (qr(g1) * 2)
    )
    a_qr = qr(w * r3) + qr(g1 * (r2 + r1) * w) / 2 - qr(r5) * bracket
    a_val = a_qr.to_quasipoly()
    s_next = _sym(r1p, r2p, -r3, r5, g1)
    return a_val - quo_exact(r5 * s_next, g1)


def _sym_nondegenerate(r1, r2, r3, r5, g1) -> QuasiPoly:
    i0 = quo(r3 + g1 * r1, r5)
    it = quo(r3 + g1 * r2, r5)

    def handler(wide, r1, r2, r3, r5, g1, i0, it):
        if not wide:
            return _sym_two_block(r1, r2, r3, r5, g1, i0, it)
        d = ggcd([r5, g1])
        rho = rem(r3, d)
        return _by_cases(
            (r1, r2, r3, r5, g1, i0, it, d), rho, _classify_zero, _sym_wide
        )

    return _by_cases(
        (r1, r2, r3, r5, g1, i0, it), it - i0 - 2, _classify_nonneg, handler
    )


def _sym(r1, r2, r3, r4, r5) -> QuasiPoly:
    def on_window(nonempty, r1, r2, r3, r4, r5):
        if not nonempty:
            return QuasiPoly.zero()
        g1 = rem(r4, r5)

        def on_g1(g1_zero, r1, r2, r3, r4, r5, g1):
            if g1_zero:
                return (r2 - r1 + 1) * rem(r3, r5)
            return _sym_nondegenerate(r1, r2, r3, r5, g1)

        return _by_cases((r1, r2, r3, r4, r5, g1), g1, _classify_zero, on_g1)

    return _by_cases((r1, r2, r3, r4, r5), r2 - r1 + 1, _classify_positive, on_window)


def sum_fast_symbolic(
    r1: QpLike, r2: QpLike, r3: QpLike, r4: QpLike, r5: QpLike
) -> QuasiPoly:
    """The Euclid-chain evaluation with quasi-polynomial arguments; the
    result agrees with sum_fast on the evaluated instance for every n
    above its boundary."""
    r1, r2, r3, r4, r5 = (QuasiPoly.coerce(v) for v in (r1, r2, r3, r4, r5))
    if not r5.is_strict_pos():
        raise DomainError("modulus r5 must be eventually strictly positive")
    if not (r2 + 1 - r1).is_nonneg():
        raise DomainError("window requires r1 <= r2 + 1 eventually")
    return _sym(r1, r2, r3, r4, r5)
