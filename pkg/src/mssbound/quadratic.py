"""Exact arithmetic in Q(sqrt r) (and Q(i)(sqrt r) for Hermitian work).

Thresholds such as (1 + sqrt eps)**2 live here so that certificates compare
them exactly rather than through floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .algebra import ComplexRational, as_rational, conj, normalize


def rational_sqrt(q: Fraction):
    """sqrt(q) as a Fraction when q is a perfect square, else None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_bracket(q: Fraction, bits: int):
    """Rationals lo <= sqrt(q) <= hi with hi - lo <= 2**-bits / q.denominator."""
    q = as_rational(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    n, d = q.numerator, q.denominator
    scale = 1 << bits
    # sqrt(n/d) = sqrt(n*d) / d
    s = isqrt(n * d * scale * scale)
    lo = Fraction(s, d * scale)
    hi = lo if s * s == n * d * scale * scale else Fraction(s + 1, d * scale)
    return lo, hi


class QuadraticFieldElement:
    """a + b*sqrt(radicand) with radicand >= 0 rational and a, b Gaussian rationals."""

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a=0, b=0, radicand=0):
        r = as_rational(radicand)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        a, b = normalize(a), normalize(b)
        root = rational_sqrt(r)
        if root is not None:
            a, b = normalize(a + b * root), Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", r)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticFieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadraticFieldElement):
            if other.b == 0:
                return other.a, Fraction(0)
            if self.b != 0 and other.radicand != self.radicand:
                raise ValueError("mixing different radicands")
            return other.a, other.b
        if isinstance(other, (int, Fraction, ComplexRational)):
            return other, Fraction(0)
        return None

    def _radicand_with(self, other):
        if isinstance(other, QuadraticFieldElement) and self.b == 0:
            return other.radicand
        return self.radicand

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticFieldElement(self.a + c[0], self.b + c[1], self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticFieldElement(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticFieldElement(self.a - c[0], self.b - c[1], self._radicand_with(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        r = self._radicand_with(other)
        a, b = c
        return QuadraticFieldElement(self.a * a + self.b * b * r, self.a * b + self.b * a, r)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.radicand
        if not norm:
            raise ZeroDivisionError("inverse of zero in Q(sqrt r)")
        return QuadraticFieldElement(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadraticFieldElement):
            return self * other.inverse()
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticFieldElement(self.a / other, self.b / other, self.radicand)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return not (self - other)

    def __hash__(self):
        return hash((self.a, self.b, self.radicand))

    def conjugate(self):
        """Complex conjugation (not the Galois conjugate)."""
        return QuadraticFieldElement(conj(self.a), conj(self.b), self.radicand)

    @property
    def is_real(self) -> bool:
        return not isinstance(self.a, ComplexRational) and not isinstance(self.b, ComplexRational)

    def sign(self) -> int:
        """Exact sign of a real element by rationalisation."""
        if not self.is_real:
            raise ValueError("sign of a non-real element")
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.radicand
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def bounds(self, bits: int = 48):
        """Rationals lo <= value <= hi, hi - lo <= 2*|b|*2**-bits."""
        if not self.is_real:
            raise ValueError("bounds of a non-real element")
        if self.b == 0:
            return self.a, self.a
        lo, hi = sqrt_bracket(self.radicand, bits)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def upper(self, tol=Fraction(1, 2**40)) -> Fraction:
        """Rational upper bound within ``tol`` of the value."""
        return self._approx(tol)[1]

    def lower(self, tol=Fraction(1, 2**40)) -> Fraction:
        return self._approx(tol)[0]

    def _approx(self, tol):
        tol = as_rational(tol)
        bits = 8
        while True:
            lo, hi = self.bounds(bits)
            if hi - lo <= tol:
                return lo, hi
            bits *= 2

    def __float__(self):
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def as_tuple(self):
        return self.a, self.b, self.radicand

    def __repr__(self):
        return f"QuadraticFieldElement({self.a}, {self.b}, {self.radicand})"


def qf_sign(v) -> int:
    """Sign of a real scalar that may be a Fraction, ComplexRational or field element."""
    if isinstance(v, QuadraticFieldElement):
        return v.sign()
    if isinstance(v, ComplexRational):
        v = v.re
    return (v > 0) - (v < 0)
