"""Exact univariate polynomial arithmetic over the integers and rationals.

PolyZ is the atom of all symbolic computation in this package: an
immutable integer-coefficient polynomial with the "eventual" order (a
polynomial is positive if its leading coefficient is, because that is
the sign of its values for all large arguments).  PolyQ carries the
rational intermediates of long division as integer numerators over a
single positive denominator.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError

NEG_INF = float("-inf")

IntLike = Union[int, "PolyZ"]


def _canonical(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


class PolyZ:
    """Polynomial in Z[x], coefficients stored ascending by degree.

    The zero polynomial stores an empty tuple and reports degree -inf.
    Instances are immutable; all operations return new values.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyZ is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "PolyZ":
        return cls(())

    @classmethod
    def const(cls, c: int) -> "PolyZ":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "PolyZ":
        if k < 0:
            raise DomainError("negative exponent")
        return cls((0,) * k + (c,))

    @classmethod
    def variable(cls) -> "PolyZ":
        return cls((0, 1))

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def eval(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def eventual_sign(self) -> int:
        """Sign of the values at all large arguments: -1, 0 or +1."""
        lead = self.leading
        return (lead > 0) - (lead < 0)

    def cauchy_bound(self) -> int:
        """An N such that for every n > N, sign(self(n)) = eventual_sign.

        Uses the Cauchy root bound 1 + max|coeff| / |leading coeff|; any
        integer at or above every real root works.  Returns 0 for
        constants and the zero polynomial.
        """
        if len(self.coeffs) <= 1:
            return 0
        lead = abs(self.coeffs[-1])
        biggest = max(abs(c) for c in self.coeffs[:-1])
        return 1 + -(-biggest // lead)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other: IntLike) -> "PolyZ":
        if isinstance(other, PolyZ):
            return other
        if isinstance(other, int):
            return PolyZ((other,))
        return NotImplemented

    def __add__(self, other: IntLike) -> "PolyZ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyZ(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self) -> "PolyZ":
        return PolyZ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntLike) -> "PolyZ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: IntLike) -> "PolyZ":
        return (-self) + other

    def __mul__(self, other: IntLike) -> "PolyZ":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PolyZ(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyZ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyZ":
        if k < 0:
            raise DomainError("negative exponent")
        out = PolyZ((1,))
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self) -> "PolyZ":
        return -self if self.eventual_sign() < 0 else self

    def compose_affine(self, a: int, b: int) -> "PolyZ":
        """Return self(a*x + b), exactly."""
        lin = PolyZ((b, a))
        acc = PolyZ(())
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PolyZ((other,))
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("PolyZ", self.coeffs))

    def __repr__(self):
        return f"PolyZ({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def abs_poly(p: PolyZ) -> PolyZ:
    """p itself if eventually positive, -p if eventually negative, else 0."""
    return abs(p)


def stable_bound(
    sign_polys: Sequence[PolyZ] = (),
    ratios: Sequence[tuple[PolyZ, PolyZ, Fraction]] = (),
) -> int:
    """A threshold N past which signs and ratio bounds are guaranteed.

    For every n > N:
      * each p in sign_polys takes the sign of its leading coefficient;
      * each (s, g, gap) in ratios satisfies |s(n)/g(n)| < gap, where
        deg s < deg g and gap > 0.

    N is *a* valid bound, not the least one.  Sign stability comes from
    the Cauchy root bound; the ratio bound solves the dominating-monomial
    inequality |s|_1 * n^(deg g - 1) < gap * (|lead g| n - |g|_1) n^(deg g - 1).
    """
    n = 0
    for p in sign_polys:
        n = max(n, p.cauchy_bound())
    for s, g, gap in ratios:
        gap = Fraction(gap)
        if gap <= 0:
            raise DomainError("ratio gap must be positive")
        if g.is_zero:
            raise DomainError("ratio denominator polynomial is zero")
        if s.is_zero:
            continue
        if not s.degree < g.degree:
            raise DomainError("ratio requires deg s < deg g")
        b_s = sum(abs(c) for c in s.coeffs)
        b_g = sum(abs(c) for c in g.coeffs[:-1])
        lead = abs(g.leading)
        n = max(n, math.ceil(Fraction(b_g + Fraction(b_s, gap), lead)) + 1)
    return n


class PolyQ:
    """Polynomial in Q[x]: integer numerators over one positive denominator.

    Canonical form: denominator >= 1 and gcd of all numerators with the
    denominator equal to 1.
    """

    __slots__ = ("nums", "den")

    def __init__(self, nums: Iterable[int] = (), den: int = 1):
        if den == 0:
            raise DomainError("zero denominator")
        ns = list(_canonical(nums))
        if den < 0:
            den = -den
            ns = [-c for c in ns]
        g = math.gcd(den, *ns) if ns else den
        object.__setattr__(self, "nums", tuple(c // g for c in ns))
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("PolyQ is immutable")

    @classmethod
    def from_polyz(cls, p: PolyZ) -> "PolyQ":
        return cls(p.coeffs, 1)

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> "PolyQ":
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return cls([int(c * den) for c in coeffs], den)

    @property
    def is_zero(self) -> bool:
        return not self.nums

    @property
    def degree(self):
        return len(self.nums) - 1 if self.nums else NEG_INF

    def coeff(self, k: int) -> Fraction:
        num = self.nums[k] if 0 <= k < len(self.nums) else 0
        return Fraction(num, self.den)

    def numerator_poly(self) -> PolyZ:
        """The PolyZ self.den * self."""
        return PolyZ(self.nums)

    def eval_fraction(self, n: int) -> Fraction:
        return Fraction(self.numerator_poly().eval(n), self.den)

    def eventual_sign(self) -> int:
        lead = self.nums[-1] if self.nums else 0
        return (lead > 0) - (lead < 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash(("PolyQ", self.nums, self.den))

    def __repr__(self):
        return f"PolyQ({list(self.nums)!r}, {self.den})"


def divide_q(f: PolyZ, g: PolyZ) -> tuple[PolyQ, PolyQ]:
    """Long division in Q[x]: f = q*g + s with deg s < deg g, exact."""
    if g.is_zero:
        raise DomainError("division by zero polynomial")
    rem = [Fraction(c) for c in f.coeffs]
    dg = len(g.coeffs) - 1
    lead = Fraction(g.leading)
    quo = [Fraction(0)] * max(0, len(rem) - dg)
    while len(rem) - 1 >= dg and rem:
        c = rem[-1] / lead
        k = len(rem) - 1 - dg
        quo[k] = c
        for j, gc in enumerate(g.coeffs):
            rem[k + j] -= c * gc
        while rem and rem[-1] == 0:
            rem.pop()
    return PolyQ.from_fractions(quo), PolyQ.from_fractions(rem)


# -- text grammar ---------------------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := atom ('^' INT)?
# atom   := INT | 'n' | '(' expr ')' | '-' atom
#
# Whitespace is insignificant; the only variable letter is `n`.

_TOKEN = re.compile(r"\s*(?:(\d+)|(n)|([+\-*^()]))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"bad character at {text[pos:]!r}")
            break
        if m.group(1) is not None:
            out.append(int(m.group(1)))
        elif m.group(2) is not None:
            out.append("n")
        else:
            out.append(m.group(3))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise PolyParseError(f"expected {tok!r}, got {got!r}")

    def expr(self) -> PolyZ:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> PolyZ:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> PolyZ:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            k = self.take()
            if not isinstance(k, int):
                raise PolyParseError("exponent must be an integer literal")
            base = base ** k
        return base

    def atom(self) -> PolyZ:
        tok = self.take()
        if tok == "-":
            return -self.atom()
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok == "n":
            return PolyZ.variable()
        if isinstance(tok, int):
            return PolyZ.const(tok)
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly(text: str) -> PolyZ:
    """Parse the CLI polynomial grammar (variable `n`, + - * ^, parens)."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial")
    parser = _Parser(tokens)
    result = parser.expr()
    if parser.peek() is not None:
        raise PolyParseError(f"trailing input at {parser.peek()!r}")
    return result


def format_poly(p: PolyZ) -> str:
    """Inverse of parse_poly, e.g. `n^2 - 3*n + 1`."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "n" if k == 1 else f"n^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
