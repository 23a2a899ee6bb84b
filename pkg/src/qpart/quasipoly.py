"""The ring of integer-valued quasi-polynomials.

A QuasiPoly is a triple (T, C, components): for every n > C with
n = T*m + i (0 <= i < T, m >= 0) its value is components[i](m).  Values
at n <= C are deliberately unrepresented.  No minimal-period canonical
form is enforced; equality works through refinement to a common period.

QuasiRational is the same shape with one rational function per residue
class; it carries intermediate results that are only integer-valued in
aggregate (Popoviciu terms, reciprocity corrections) until
to_quasipoly() restores an integer representation.
"""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    BelowBoundaryError,
    DomainError,
    InvariantViolation,
    PeriodCapError,
)
from .intpoly import PolyZ

DEFAULT_PERIOD_CAP = 10**6

QpLike = Union[int, PolyZ, "QuasiPoly"]


def period_cap() -> int:
    raw = os.environ.get("QPART_PERIOD_CAP")
    if raw is None:
        return DEFAULT_PERIOD_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"bad QPART_PERIOD_CAP value {raw!r}") from exc
    if cap < 1:
        raise DomainError("QPART_PERIOD_CAP must be positive")
    return cap


def _check_period(T: int) -> None:
    if T > period_cap():
        raise PeriodCapError(
            f"period {T} exceeds cap {period_cap()} (set QPART_PERIOD_CAP to raise)"
        )


class QuasiPoly:
    __slots__ = ("period", "lower_boundary", "components")

    def __init__(self, period: int, lower_boundary: int, components: Iterable[PolyZ]):
        comps = tuple(components)
        if period < 1:
            raise DomainError("period must be >= 1")
        if lower_boundary < 0:
            raise DomainError("lower boundary must be >= 0")
        if len(comps) != period:
            raise DomainError("need exactly one component per residue class")
        if not all(isinstance(c, PolyZ) for c in comps):
            raise DomainError("components must be PolyZ")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "lower_boundary", int(lower_boundary))
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("QuasiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, p: PolyZ) -> "QuasiPoly":
        """Embed Z[x] into the ring: period 1, boundary 0."""
        return cls(1, 0, (p,))

    @classmethod
    def const(cls, c: int) -> "QuasiPoly":
        return cls.from_poly(PolyZ.const(c))

    @classmethod
    def zero(cls) -> "QuasiPoly":
        return cls.from_poly(PolyZ.zero())

    @classmethod
    def one(cls) -> "QuasiPoly":
        return cls.const(1)

    @staticmethod
    def coerce(value: QpLike) -> "QuasiPoly":
        if isinstance(value, QuasiPoly):
            return value
        if isinstance(value, PolyZ):
            return QuasiPoly.from_poly(value)
        if isinstance(value, int):
            return QuasiPoly.const(value)
        raise DomainError(f"cannot interpret {value!r} as a quasi-polynomial")

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def with_boundary(self, c: int) -> "QuasiPoly":
        """Same representation with the lower boundary raised to c."""
        if c <= self.lower_boundary:
            return self
        return QuasiPoly(self.period, c, self.components)

    def refine(self, new_period: int) -> "QuasiPoly":
        """Re-express with a multiple of the current period; same values."""
        T = self.period
        if new_period % T:
            raise DomainError(f"{new_period} is not a multiple of period {T}")
        if new_period == T:
            return self
        _check_period(new_period)
        step = new_period // T
        comps = [
            self.components[j % T].compose_affine(step, j // T)
            for j in range(new_period)
        ]
        return QuasiPoly(new_period, self.lower_boundary, comps)

    def _common(self, other: "QuasiPoly") -> tuple["QuasiPoly", "QuasiPoly"]:
        T = math.lcm(self.period, other.period)
        return self.refine(T), other.refine(T)

    # -- evaluation -----------------------------------------------------------

    def at(self, n: int) -> int:
        """Value at n; requires n > lower_boundary."""
        if n <= self.lower_boundary:
            raise BelowBoundaryError(
                f"n={n} is not above the lower boundary {self.lower_boundary}"
            )
        return self.component_value(n)

    def component_value(self, n: int) -> int:
        """The representation's prediction at any n >= 0, ignoring the boundary."""
        if n < 0:
            raise DomainError("quasi-polynomials are functions on N")
        i = n % self.period
        return self.components[i].eval(n // self.period)

    # -- order ---------------------------------------------------------------

    def is_nonneg(self) -> bool:
        """Eventually >= 0: each component zero or with positive leading coeff."""
        return all(c.is_zero or c.leading > 0 for c in self.components)

    def is_strict_pos(self) -> bool:
        """Eventually >= 1 on every residue class."""
        return all(c.leading > 0 for c in self.components)

    def __abs__(self) -> "QuasiPoly":
        out = QuasiPoly(self.period, self.lower_boundary, (abs(c) for c in self.components))
        return out.with_boundary(max(self.lower_boundary, sign_stability_boundary(self)))

    def eventual_sign_qp(self) -> "QuasiPoly":
        """Constant-per-class sign of self, with a sign-stable boundary."""
        comps = [PolyZ.const(c.eventual_sign()) for c in self.components]
        bound = max(self.lower_boundary, sign_stability_boundary(self))
        return QuasiPoly(self.period, bound, comps)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: QpLike) -> "QuasiPoly":
        other = self.coerce(other)
        a, b = self._common(other)
        return QuasiPoly(
            a.period,
            max(a.lower_boundary, b.lower_boundary),
            (x + y for x, y in zip(a.components, b.components)),
        )

    __radd__ = __add__

    def __neg__(self) -> "QuasiPoly":
        return QuasiPoly(self.period, self.lower_boundary, (-c for c in self.components))

    def __sub__(self, other: QpLike) -> "QuasiPoly":
        return self + (-self.coerce(other))

    def __rsub__(self, other: QpLike) -> "QuasiPoly":
        return (-self) + other

    def __mul__(self, other: QpLike) -> "QuasiPoly":
        other = self.coerce(other)
        a, b = self._common(other)
        return QuasiPoly(
            a.period,
            max(a.lower_boundary, b.lower_boundary),
            (x * y for x, y in zip(a.components, b.components)),
        )

    __rmul__ = __mul__

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        """Equality as functions above max of the two boundaries."""
        if isinstance(other, (int, PolyZ)):
            other = self.coerce(other)
        if not isinstance(other, QuasiPoly):
            return NotImplemented
        a, b = self._common(other)
        return a.components == b.components

    __hash__ = None  # no minimal-period canonical form, so no stable hash

    def __repr__(self):
        return (
            f"QuasiPoly(period={self.period}, lower_boundary={self.lower_boundary}, "
            f"components={[str(c) for c in self.components]})"
        )

    # -- serialization ------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "period": self.period,
            "lower_boundary": self.lower_boundary,
            "components": [[str(c) for c in comp.coeffs] for comp in self.components],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuasiPoly":
        try:
            period = int(obj["period"])
            boundary = int(obj["lower_boundary"])
            comps = [PolyZ(int(c) for c in row) for row in obj["components"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad quasi-polynomial JSON: {exc}") from exc
        return cls(period, boundary, comps)

    @classmethod
    def from_json(cls, text: str) -> "QuasiPoly":
        return cls.from_json_obj(json.loads(text))


def sign_stability_boundary(q: QuasiPoly) -> int:
    """An n-threshold past which every component value has its eventual sign."""
    out = 0
    T = q.period
    for i, comp in enumerate(q.components):
        if not comp.is_zero:
            out = max(out, T * comp.cauchy_bound() + i)
    return out


def restrict(q: QuasiPoly, T: int, i: int) -> QuasiPoly:
    """The function m -> q(T*m + i) as a quasi-polynomial in m."""
    if not 0 <= i < T:
        raise DomainError("residue out of range")
    L = math.lcm(q.period, T)
    qq = q.refine(L)
    step = L // T
    comps = [qq.components[T * j + i] for j in range(step)]
    return QuasiPoly(step, q.lower_boundary // T + 1, comps)


def assemble(T: int, parts: Sequence[QuasiPoly]) -> QuasiPoly:
    """Inverse of restrict: interleave per-residue functions of m into one
    quasi-polynomial of n = T*m + i."""
    if len(parts) != T:
        raise DomainError("need one part per residue class")
    L = math.lcm(*(p.period for p in parts))
    _check_period(T * L)
    refined = [p.refine(L) for p in parts]
    comps = []
    for rho in range(T * L):
        i, j = rho % T, rho // T
        comps.append(refined[i].components[j])
    boundary = max(T * p.lower_boundary + i for i, p in enumerate(parts))
    return QuasiPoly(T * L, boundary, comps)


class QuasiRational:
    """Quasi-rational function: one num/den pair of PolyZ per residue class."""

    __slots__ = ("period", "lower_boundary", "components")

    def __init__(
        self,
        period: int,
        lower_boundary: int,
        components: Iterable[tuple[PolyZ, PolyZ]],
    ):
        comps = tuple((num, den) for num, den in components)
        if period < 1 or len(comps) != period:
            raise DomainError("need exactly one (num, den) pair per residue class")
        if any(den.is_zero for _, den in comps):
            raise DomainError("zero denominator polynomial")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "lower_boundary", int(lower_boundary))
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("QuasiRational is immutable")

    @classmethod
    def from_quasipoly(cls, q: QuasiPoly) -> "QuasiRational":
        one = PolyZ.const(1)
        return cls(q.period, q.lower_boundary, ((c, one) for c in q.components))

    @staticmethod
    def coerce(value) -> "QuasiRational":
        if isinstance(value, QuasiRational):
            return value
        return QuasiRational.from_quasipoly(QuasiPoly.coerce(value))

    def refine(self, new_period: int) -> "QuasiRational":
        T = self.period
        if new_period % T:
            raise DomainError(f"{new_period} is not a multiple of period {T}")
        if new_period == T:
            return self
        _check_period(new_period)
        step = new_period // T
        comps = [
            (
                self.components[j % T][0].compose_affine(step, j // T),
                self.components[j % T][1].compose_affine(step, j // T),
            )
            for j in range(new_period)
        ]
        return QuasiRational(new_period, self.lower_boundary, comps)

    def _common(self, other: "QuasiRational"):
        T = math.lcm(self.period, other.period)
        return self.refine(T), other.refine(T)

    def __add__(self, other) -> "QuasiRational":
        other = self.coerce(other)
        a, b = self._common(other)
        comps = [
            (n1 * d2 + n2 * d1, d1 * d2)
            for (n1, d1), (n2, d2) in zip(a.components, b.components)
        ]
        return QuasiRational(a.period, max(a.lower_boundary, b.lower_boundary), comps)

    __radd__ = __add__

    def __neg__(self) -> "QuasiRational":
        return QuasiRational(
            self.period, self.lower_boundary, ((-n, d) for n, d in self.components)
        )

    def __sub__(self, other) -> "QuasiRational":
        return self + (-self.coerce(other))

    def __rsub__(self, other) -> "QuasiRational":
        return (-self) + other

    def __mul__(self, other) -> "QuasiRational":
        other = self.coerce(other)
        a, b = self._common(other)
        comps = [
            (n1 * n2, d1 * d2)
            for (n1, d1), (n2, d2) in zip(a.components, b.components)
        ]
        return QuasiRational(a.period, max(a.lower_boundary, b.lower_boundary), comps)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QuasiRational":
        other = self.coerce(other)
        if any(n.is_zero for n, _ in other.components):
            raise DomainError("division by a quasi-rational with a zero class")
        a, b = self._common(other)
        comps = [
            (n1 * d2, d1 * n2)
            for (n1, d1), (n2, d2) in zip(a.components, b.components)
        ]
        return QuasiRational(a.period, max(a.lower_boundary, b.lower_boundary), comps)

    def eval_fraction(self, n: int) -> Fraction:
        if n <= self.lower_boundary:
            raise BelowBoundaryError(
                f"n={n} is not above the lower boundary {self.lower_boundary}"
            )
        i = n % self.period
        num, den = self.components[i]
        m = n // self.period
        d = den.eval(m)
        if d == 0:
            raise InvariantViolation("denominator vanished above its root bound")
        return Fraction(num.eval(m), d)

    def to_quasipoly(self) -> QuasiPoly:
        """Integrality restoration: requires each class to be a polynomial
        with integer values; the period is refined as needed."""
        from .intpoly import divide_q

        parts = []
        for num, den in self.components:
            q, s = divide_q(num, den)
            if not s.is_zero:
                raise InvariantViolation(
                    "quasi-rational class is not eventually polynomial"
                )
            D = q.den
            P = q.numerator_poly()
            t, rows = scaled_poly_classes(P, D, allow_fractional_const=False)
            comps = [a for a, _ in rows]
            parts.append(QuasiPoly(t, den.cauchy_bound(), comps))
        out = assemble(self.period, parts)
        return out.with_boundary(max(out.lower_boundary, self.lower_boundary))

    def __repr__(self):
        pairs = [f"({n!s})/({d!s})" for n, d in self.components]
        return (
            f"QuasiRational(period={self.period}, "
            f"lower_boundary={self.lower_boundary}, components={pairs})"
        )


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def scaled_poly_classes(
    P: PolyZ, D: int, allow_fractional_const: bool
) -> tuple[int, list[tuple[PolyZ, int]]]:
    """Split P/D into per-residue integer polynomials with the least period.

    Finds the smallest t dividing D such that for every j in [0, t),
    P(t*m + j)/D = A_j(m) + c_j/D with A_j in Z[m] and 0 <= c_j < D.
    Returns (t, [(A_j, c_j), ...]).  With allow_fractional_const False,
    every c_j must be 0 (P/D takes integer values); t = D always succeeds
    in the fractional mode because positive powers of (D*m + j) contribute
    coefficients divisible by D.
    """
    if D < 1:
        raise DomainError("scale must be positive")
    for t in _divisors(D):
        rows = []
        for j in range(t):
            comp = P.compose_affine(t, j)
            cs = comp.coeffs
            if any(c % D for c in cs[1:]):
                rows = None
                break
            c0 = cs[0] if cs else 0
            e, frac = divmod(c0, D)
            if frac and not allow_fractional_const:
                rows = None
                break
            rows.append((PolyZ((e,) + tuple(c // D for c in cs[1:])), frac))
        if rows is not None:
            return t, rows
    raise InvariantViolation("rational polynomial takes non-integer values")
