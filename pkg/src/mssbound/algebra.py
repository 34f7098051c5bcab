"""Exact Gaussian-rational scalars, vectors and Hermitian matrices.

Rationals are :class:`fractions.Fraction`. A complex entry is a
:class:`ComplexRational`; purely real entries are stored as plain Fractions so
real instances never pay for complex arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[Fraction, "ComplexRational"]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (floats refused)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class ComplexRational:
    """re + i*im with Fraction parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @staticmethod
    def _parts(other):
        if isinstance(other, ComplexRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ComplexRational(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ComplexRational(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ComplexRational(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        return ComplexRational(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("ComplexRational division by zero")
        return ComplexRational((self.re * a + self.im * b) / n, (self.im * a - self.re * b) / n)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ComplexRational(*p) / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"ComplexRational({self.re}, {self.im})"


def normalize(value) -> Scalar:
    """Canonical scalar: real values collapse to Fraction."""
    if isinstance(value, ComplexRational):
        return value.re if value.im == 0 else value
    return as_rational(value)


def conj(value):
    if isinstance(value, ComplexRational):
        return value.conjugate()
    return value


def real_part(value) -> Fraction:
    if isinstance(value, ComplexRational):
        return value.re
    return value


def abs_sq(value) -> Fraction:
    if isinstance(value, ComplexRational):
        return value.abs_sq()
    return value * value


@dataclass(frozen=True)
class VectorC:
    entries: tuple

    def __init__(self, entries: Iterable):
        object.__setattr__(self, "entries", tuple(normalize(e) for e in entries))
        if not self.entries:
            raise ValueError("vectors must have positive dimension")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def norm_sq(self) -> Fraction:
        return sum((abs_sq(e) for e in self.entries), Fraction(0))

    def scaled(self, c) -> "VectorC":
        return VectorC(normalize(c * e) for e in self.entries)

    @classmethod
    def basis(cls, d: int, k: int) -> "VectorC":
        return cls(Fraction(int(j == k)) for j in range(d))


@dataclass(frozen=True)
class HermitianMatrix:
    """Exact d x d Hermitian matrix. Construction validates the symmetry."""

    entries: tuple

    def __init__(self, rows: Sequence[Sequence], check: bool = True):
        ent = tuple(tuple(normalize(v) for v in row) for row in rows)
        d = len(ent)
        if d == 0:
            raise ValueError("matrices must have positive dimension")
        if check:
            for j in range(d):
                if len(ent[j]) != d:
                    raise ValueError("matrix is not square")
                for k in range(j, d):
                    if ent[j][k] != conj(ent[k][j]):
                        raise ValueError(f"matrix is not Hermitian at ({j}, {k})")
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, jk):
        j, k = jk
        return self.entries[j][k]

    def rows(self):
        return [list(r) for r in self.entries]

    @property
    def is_real(self) -> bool:
        return not any(isinstance(v, ComplexRational) for row in self.entries for v in row)

    def is_zero(self) -> bool:
        return not any(v for row in self.entries for v in row)

    def trace(self) -> Fraction:
        return sum((real_part(self.entries[j][j]) for j in range(self.dim)), Fraction(0))

    def _check_dim(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        return HermitianMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], check=False
        )

    def __sub__(self, other):
        self._check_dim(other)
        return HermitianMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], check=False
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "HermitianMatrix":
        c = as_rational(c)
        return HermitianMatrix([[c * v for v in row] for row in self.entries], check=False)

    @classmethod
    def zeros(cls, d: int) -> "HermitianMatrix":
        z = Fraction(0)
        return cls([[z] * d for _ in range(d)], check=False)

    @classmethod
    def identity(cls, d: int) -> "HermitianMatrix":
        return cls([[Fraction(int(j == k)) for k in range(d)] for j in range(d)], check=False)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "HermitianMatrix":
        d = len(diag)
        return cls([[as_rational(diag[j]) if j == k else Fraction(0) for k in range(d)] for j in range(d)])

    def block_diagonal(self, copies: int) -> "HermitianMatrix":
        return block_diag([self] * copies)


def block_diag(blocks: Sequence[HermitianMatrix]) -> HermitianMatrix:
    n = sum(b.dim for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for j in range(b.dim):
            for k in range(b.dim):
                rows[off + j][off + k] = b.entries[j][k]
        off += b.dim
    return HermitianMatrix(rows, check=False)


def matrix_sum(mats: Sequence[HermitianMatrix], dim: int) -> HermitianMatrix:
    total = HermitianMatrix.zeros(dim)
    for m in mats:
        total = total + m
    return total


def outer_product(v: VectorC) -> HermitianMatrix:
    """v v^*; entry (j, k) is v[j] * conj(v[k])."""
    e = v.entries
    return HermitianMatrix([[a * conj(b) for b in e] for a in e], check=False)


# --- exact PSD / PD decisions -------------------------------------------------


def _sign_rational(v) -> int:
    v = real_part(v)
    return (v > 0) - (v < 0)


def is_psd(m: HermitianMatrix) -> bool:
    """Decide M >= 0 exactly via diagonally pivoted LDL^T."""
    a = m.rows()
    idx = list(range(m.dim))
    while idx:
        p = max(idx, key=lambda k: real_part(a[k][k]))
        piv = real_part(a[p][p])
        if piv < 0:
            return False
        if piv == 0:
            # largest remaining diagonal is zero: PSD iff the residual is zero
            return not any(a[j][k] for j in idx for k in idx)
        idx.remove(p)
        for j in idx:
            f = a[j][p] / piv
            if not f:
                continue
            row_p = a[p]
            row_j = a[j]
            for k in idx:
                row_j[k] = row_j[k] - f * row_p[k]
    return True


def is_pd_generic(rows, sign=_sign_rational) -> bool:
    """Strict positive definiteness: every unpivoted LDL^T pivot is positive.

    Works over any field whose diagonal elements admit ``sign`` (rationals,
    Gaussian rationals, quadratic-field elements).
    """
    a = [list(r) for r in rows]
    n = len(a)
    for p in range(n):
        piv = a[p][p]
        if sign(piv) <= 0:
            return False
        for j in range(p + 1, n):
            f = a[j][p] / piv
            if not f:
                continue
            row_p = a[p]
            row_j = a[j]
            for k in range(p + 1, n):
                row_j[k] = row_j[k] - f * row_p[k]
    return True


def is_pd(m: HermitianMatrix) -> bool:
    return is_pd_generic(m.entries)


def loewner_leq(m: HermitianMatrix, n: HermitianMatrix) -> bool:
    """M <= N in the Loewner order."""
    if m.dim != n.dim:
        raise ValueError(f"dimension mismatch: {m.dim} vs {n.dim}")
    return is_psd(n - m)


def trace_of_product(x: HermitianMatrix, y: HermitianMatrix) -> Fraction:
    d = x.dim
    s = sum(x.entries[j][k] * y.entries[k][j] for j in range(d) for k in range(d))
    return real_part(normalize(s))


def trace_product_bound_holds(x: HermitianMatrix, y: HermitianMatrix, norm_x_upper) -> bool:
    """Tr(XY) <= norm_x_upper * Tr(Y) for PSD X, Y with norm_x_upper >= ||X||."""
    if not is_psd(x) or not is_psd(y):
        raise ValueError("trace_product_bound_holds needs PSD inputs")
    return trace_of_product(x, y) <= as_rational(norm_x_upper) * y.trace()


def solve_trace(rows, rhs_rows):
    """Tr(M^{-1} B) by exact Gauss-Jordan elimination; M is never inverted.

    Entries may be any exact field type supporting +, -, *, / and truth testing.
    """
    n = len(rows)
    a = [list(r) + list(b) for r, b in zip(rows, rhs_rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        row_c = [v / piv for v in a[c]]
        a[c] = row_c
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [u - f * v for u, v in zip(a[r], row_c)]
    return sum((a[k][n + k] for k in range(n)), 0 * a[0][0])


def operator_norm(m: HermitianMatrix, tol=Fraction(1, 2**40)) -> Fraction:
    """Largest eigenvalue of a PSD matrix to absolute error <= tol.

    Goes through the characteristic polynomial and Sturm bisection so every
    norm in the package shares one root finder.
    """
    from .poly import char_poly, largest_root

    b = largest_root(char_poly(m), as_rational(tol))
    return (b.lo + b.hi) / 2
