"""Exact univariate polynomials over Q, Sturm sequences and root brackets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .algebra import ComplexRational, HermitianMatrix, as_rational
from .errors import InterlacingViolation

DEFAULT_WIDTH = Fraction(1, 2**40)


class NotRealRooted(ValueError):
    pass


class UniPoly:
    """Polynomial in x with Fraction coefficients, ``coeffs[k]`` multiplying x**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading == 1

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly([c * v for v in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element (Fraction, quadratic-field, ...)."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.leading
        q = [Fraction(0)] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] / lb
            if c:
                q[k - db] = c
                for j, b in enumerate(other.coeffs):
                    r[k - db + j] -= c * b
        return UniPoly(q), UniPoly(r[:db] if db > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "UniPoly":
        return self * (1 / self.leading)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return self
        g = self.gcd(self.derivative())
        return self // g

    def integer_coeffs(self) -> list:
        """Coefficients scaled by a positive integer to be integral (signs preserved)."""
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return [int(c * den) for c in self.coeffs]


# --- characteristic polynomial --------------------------------------------------


def char_poly(m: HermitianMatrix) -> UniPoly:
    """det(xI - M) by Berkowitz's division-free recursion."""
    a = m.entries
    n = m.dim
    p = [Fraction(1)]  # highest degree first
    for k in range(n):
        # leading k x k block is A_k; new row/column k
        col = [a[i][k] for i in range(k)]
        row = [a[k][j] for j in range(k)]
        t = [Fraction(1), -a[k][k]]
        v = col
        for _ in range(k):
            t.append(-sum((r * c for r, c in zip(row, v)), Fraction(0)))
            v = [sum((a[i][j] * v[j] for j in range(k)), Fraction(0)) for i in range(k)]
        t = t[: k + 2]
        p = [sum((t[i - j] * p[j] for j in range(len(p)) if 0 <= i - j < len(t)), Fraction(0)) for i in range(k + 2)]
    out = []
    for c in reversed(p):
        if isinstance(c, ComplexRational):
            if c.im != 0:
                raise ArithmeticError("characteristic polynomial of a Hermitian matrix came out non-real")
            c = c.re
        out.append(c)
    return UniPoly(out)


# --- Sturm machinery ------------------------------------------------------------


class SturmChain:
    """Sturm sequence of the squarefree part of ``p``, stored with integer coefficients."""

    def __init__(self, p: UniPoly):
        if p.is_zero():
            raise ValueError("Sturm sequence of the zero polynomial")
        f = p.squarefree_part()
        seq = [f, f.derivative()]
        while not seq[-1].is_zero():
            seq.append(-(seq[-2] % seq[-1]))
        seq.pop()
        self.squarefree = f
        self._int = [s.integer_coeffs() for s in seq]

    def variations(self, x: Fraction) -> int:
        return kernels.sign_variations(self._int, x.numerator, x.denominator)

    def variations_at_infinity(self, sign: int) -> int:
        count, last = 0, 0
        for c in self._int:
            s = (1 if c[-1] > 0 else -1) * (sign ** (len(c) - 1))
            if last and s != last:
                count += 1
            last = s
        return count

    def count_real_roots(self) -> int:
        return self.variations_at_infinity(-1) - self.variations_at_infinity(1)

    def count_in(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


def is_real_rooted(p: UniPoly) -> bool:
    if p.is_zero():
        raise ValueError("the zero polynomial has no root structure")
    chain = SturmChain(p)
    return chain.count_real_roots() == chain.squarefree.degree


def cauchy_bound(p: UniPoly) -> Fraction:
    """Rational B with every root strictly inside |z| < B."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootBracket:
    """(lo, hi] holding exactly one real root of ``poly``, the largest one."""

    lo: Fraction
    hi: Fraction
    poly: UniPoly
    _chain: SturmChain = field(default=None, repr=False, compare=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self, width) -> "RootBracket":
        if self.width <= width:
            return self
        return _bisect(self._chain, self.poly, self.lo, self.hi, as_rational(width))


def _bisect(chain: SturmChain, p: UniPoly, lo: Fraction, hi: Fraction, width: Fraction) -> RootBracket:
    v_hi = chain.variations(hi)
    v_lo = chain.variations(lo)
    while hi - lo > width or v_lo - v_hi != 1:
        mid = (lo + hi) / 2
        v_mid = chain.variations(mid)
        if v_mid - v_hi >= 1:
            lo, v_lo = mid, v_mid
        else:
            hi = mid
    return RootBracket(lo, hi, p, chain)


def largest_root(p: UniPoly, width=DEFAULT_WIDTH) -> RootBracket:
    """Bracket of width <= ``width`` around the largest root of a real-rooted ``p``."""
    width = as_rational(width)
    if width <= 0:
        raise ValueError("bracket width must be positive")
    if p.degree < 1:
        raise ValueError("largest_root needs degree >= 1")
    chain = SturmChain(p)
    if chain.count_real_roots() != chain.squarefree.degree:
        raise NotRealRooted(f"{p} is not real-rooted")
    b = cauchy_bound(p)
    return _bisect(chain, p, -b, b, width)


def compare_roots(a: RootBracket, b: RootBracket, floor=Fraction(1, 2**80)) -> int:
    """Order two root brackets, refining until they separate; 0 once both are below ``floor``."""
    while True:
        # roots lie in half-open (lo, hi]
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if a.width <= floor and b.width <= floor:
            return 0
        a = a.refine(max(a.width / 2, floor))
        b = b.refine(max(b.width / 2, floor))


def is_above_roots_1d(p: UniPoly, x0) -> bool:
    """p and all its derivatives are strictly positive at x0 (monic p only)."""
    if not p.is_monic():
        raise ValueError("is_above_roots_1d needs a monic polynomial")
    q = p
    while not q.is_zero():
        if not q(x0) > 0:
            return False
        q = q.derivative()
    return True


def check_common_interlacing_consequence(children, weights, width=DEFAULT_WIDTH) -> bool:
    """min over children of the largest root <= largest root of the weighted mixture + width."""
    children = list(children)
    weights = [as_rational(w) for w in weights]
    if len(children) != len(weights) or not children:
        raise ValueError("need one positive weight per child")
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise ValueError("weights must be positive and sum to 1")
    deg = children[0].degree
    for c in children:
        if not c.is_monic() or c.degree != deg:
            raise ValueError("children must be monic of equal degree")
        if not is_real_rooted(c):
            raise ValueError("children must be real-rooted")
    mixture = UniPoly()
    for c, w in zip(children, weights):
        mixture = mixture + c * w
    if not is_real_rooted(mixture):
        raise InterlacingViolation("mixture of children is not real-rooted")
    width = as_rational(width)
    w4 = width / 4
    mix = largest_root(mixture, w4)
    best = min(largest_root(c, w4).lo for c in children)
    return best <= mix.hi + width
