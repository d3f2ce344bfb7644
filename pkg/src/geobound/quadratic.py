"""
Exact arithmetic in a real quadratic field Q(sqrt(d)).

Values are p + q*sqrt(d) with p, q rational and d a square-free positive
integer.  Rational values are normalised to d = 1, so any rational mixes
freely with any field; two irrational values must share d.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, r) with d == s*s*r and r square-free."""
    if d < 1:
        raise ValueError("radicand must be a positive integer, got %r" % d)
    s, r, f = 1, d, 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


def _sqrt_floor(x: Fraction) -> int:
    """floor(sqrt(x)) for rational x >= 0."""
    return math.isqrt(x.numerator // x.denominator)


class QuadraticReal:
    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d: int = 1):
        p, q, d = Fraction(p), Fraction(q), int(d)
        if q:
            s, d = squarefree_split(d)
            q *= s
            if d == 1:
                p, q = p + q, Fraction(0)
        else:
            if d < 1:
                raise ValueError("radicand must be a positive integer, got %r" % d)
        if not q:
            d = 1
        self.p, self.q, self.d = p, q, d

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticReal":
        return cls(0, 1, d)

    # -- coercion ------------------------------------------------------------

    @staticmethod
    def _lift(other) -> "QuadraticReal | None":
        if isinstance(other, QuadraticReal):
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticReal(other)
        return None

    def _common(self, other: "QuadraticReal") -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise ValueError("cannot mix sqrt(%d) and sqrt(%d)" % (self.d, other.d))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.p + o.p, self.q + o.q, self._common(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self._common(o)
        return QuadraticReal(self.p * o.p + self.q * o.q * d,
                             self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticReal":
        return QuadraticReal(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def inverse(self) -> "QuadraticReal":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return QuadraticReal(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering --------------------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q
        if not q:
            return (p > 0) - (p < 0)
        sq = 1 if q > 0 else -1
        if p == 0 or (p > 0) == (q > 0):
            return sq
        # p and q*sqrt(d) have opposite signs; the larger magnitude wins
        return (1 if p > 0 else -1) if p * p > q * q * self.d else sq

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q and (not self.q or self.d == o.d)

    def __hash__(self):
        return hash(self.p) if not self.q else hash((self.p, self.q, self.d))

    def _cmp(self, other):
        o = self._lift(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return bool(self.p or self.q)

    def __floor__(self) -> int:
        q = self.q
        if not q:
            return math.floor(self.p)
        r = _sqrt_floor(q * q * self.d)
        if q < 0:
            # -sqrt(x) lies in (-(r+1), -r]
            r = -r - 1
        base = math.floor(self.p + r)
        return base + 1 if self >= base + 1 else base

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return not self.q

    # -- text ------------------------------------------------------------------

    def __repr__(self):
        return "QuadraticReal(%s, %s, %d)" % (self.p, self.q, self.d)

    def __str__(self):
        if not self.q:
            return str(self.p)
        surd = "sqrt(%d)" % self.d
        mag = abs(self.q)
        term = surd if mag == 1 else "%s*%s" % (mag, surd)
        if not self.p:
            return ("-" if self.q < 0 else "") + term
        return "%s%s%s" % (self.p, "-" if self.q < 0 else "+", term)
