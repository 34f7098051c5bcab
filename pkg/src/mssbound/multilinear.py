"""Mixed characteristic polynomial via the truncated algebra Q[x][z_1..z_m]/(z_i^2).

``det(xI - B + sum z_i A_i)`` is expanded division-free (the coefficient ring
has zero divisors) by a Laplace recursion memoised over column subsets. Block
structure shared by all the matrices is detected and the blocks' determinants
are multiplied in the algebra instead of expanding one big matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Optional, Sequence

from . import kernels
from .algebra import ComplexRational, HermitianMatrix
from .errors import GuardExceeded, MixedCharNotRealRooted
from .poly import UniPoly, is_real_rooted

MAX_VARIABLES = 24
ORACLE_MAX_DIM = 6
ORACLE_MAX_MATRICES = 8


@dataclass(frozen=True)
class MultilinearDetElement:
    """Coefficients of squarefree z-monomials; ``terms[mask]`` multiplies prod_{i in mask} z_i."""

    dim: int
    m: int
    terms: dict = field(hash=False)

    def coefficient(self, subset) -> UniPoly:
        mask = 0
        for i in subset:
            mask |= 1 << i
        return self.terms.get(mask, UniPoly())

    def subsets(self):
        for mask in sorted(self.terms):
            yield tuple(i for i in range(self.m) if mask >> i & 1), self.terms[mask]


@dataclass(frozen=True)
class MixedCharResult:
    mu: UniPoly
    subset_terms: Optional[MultilinearDetElement] = None


def _check_dims(matrices, dim):
    if dim is None:
        if not matrices:
            raise ValueError("dimension is required when no matrices are given")
        dim = matrices[0].dim
    for a in matrices:
        if a.dim != dim:
            raise ValueError(f"dimension mismatch: expected {dim}, got {a.dim}")
    return dim


def _components(mats: Sequence[HermitianMatrix], dim: int):
    parent = list(range(dim))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for a in mats:
        e = a.entries
        for j in range(dim):
            for k in range(j + 1, dim):
                if e[j][k]:
                    rj, rk = find(j), find(k)
                    if rj != rk:
                        parent[rk] = rj
    groups = {}
    for j in range(dim):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


def _scaled_entries(mats):
    """Integer entries and the common denominator L when every matrix is real.

    L*(xI - B + sum z A) = yI - L*B + sum z (L*A) with y = L*x, so the DP can run
    on Python ints; coefficient k of the result is rescaled by L**(k - d).
    Complex inputs keep their exact entries with L = 1.
    """
    if all(m.is_real for m in mats):
        dens = [v.denominator for m in mats for row in m.entries for v in row]
        big = lcm(*dens) if dens else 1
        return [[[int(v * big) for v in row] for row in m.entries] for m in mats], big
    return [m.entries for m in mats], 1


def _block_det(idx, mats_e, base_e) -> dict:
    """Truncated-algebra determinant of the principal block on ``idx``."""
    n = len(idx)
    dp = {0: {0: [1]}}
    for t in range(n):
        j = idx[t]
        nxt = {}
        for cols, elem in dp.items():
            for c in range(n):
                bit = 1 << c
                if cols & bit:
                    continue
                k = idx[c]
                # parity of columns already used to the right of c
                sign = -1 if bin(cols >> (c + 1)).count("1") & 1 else 1
                c0 = -base_e[j][k] if base_e is not None else 0
                c1 = 1 if j == k else 0
                zt = [(1 << i, sign * a[j][k]) for i, a in enumerate(mats_e) if a[j][k]]
                acc = nxt.get(cols | bit)
                if acc is None:
                    acc = nxt[cols | bit] = {}
                kernels.affine_mul_acc(acc, elem, sign * c0, sign * c1, zt)
        dp = nxt
    return dp[(1 << n) - 1]


def _blocks(matrices, dim, base):
    matrices = list(matrices)
    allm = matrices + ([base] if base is not None else [])
    dim = _check_dims(allm, dim)
    if len(matrices) > MAX_VARIABLES:
        raise GuardExceeded("truncated determinant variables", len(matrices), MAX_VARIABLES)
    if not allm:
        return dim, [], 1
    ents, big = _scaled_entries(allm)
    mats_e = ents[: len(matrices)]
    base_e = ents[-1] if base is not None else None
    return dim, [_block_det(idx, mats_e, base_e) for idx in _components(allm, dim)], big


def _rescale(coeffs, big, dim):
    out = []
    for k, c in enumerate(coeffs):
        if isinstance(c, ComplexRational):
            if c.im != 0:
                raise ArithmeticError("non-real coefficient in a Hermitian determinant")
            c = c.re
        out.append(Fraction(c) * Fraction(big) ** (k - dim) if c else Fraction(0))
    return UniPoly(out)


def truncated_determinant(
    matrices: Sequence[HermitianMatrix],
    dim: Optional[int] = None,
    base: Optional[HermitianMatrix] = None,
) -> MultilinearDetElement:
    """det(xI - base + sum_i z_i A_i) in the algebra where every z_i^2 = 0.

    ``base`` defaults to zero; it carries already-fixed rank-one summands when
    the search evaluates conditional expectations.
    """
    dim, blocks, big = _blocks(matrices, dim, base)
    if not blocks:
        return MultilinearDetElement(dim, 0, {0: UniPoly.monomial(dim)})
    elem = blocks[0]
    for b in blocks[1:]:
        elem = kernels.subset_mul(elem, b)
    terms = {}
    for mask, coeffs in elem.items():
        p = _rescale(coeffs, big, dim)
        if not p.is_zero():
            terms[mask] = p
    return MultilinearDetElement(dim, len(matrices), terms)


def _validate_mu(mu: UniPoly, dim: int) -> UniPoly:
    if mu.degree != dim or not mu.is_monic():
        raise MixedCharNotRealRooted(f"mixed characteristic polynomial {mu} is not monic of degree {dim}")
    if not is_real_rooted(mu):
        raise MixedCharNotRealRooted(f"mixed characteristic polynomial {mu} is not real-rooted")
    return mu


def apply_one_minus_partials(e: MultilinearDetElement, audit: bool = False) -> MixedCharResult:
    """prod_i (1 - d/dz_i) at z = 0: the signed sum of all squarefree coefficients."""
    acc = [Fraction(0)] * (e.dim + 1)
    for mask, p in e.terms.items():
        s = -1 if bin(mask).count("1") & 1 else 1
        for k, c in enumerate(p.coeffs):
            acc[k] += s * c
    return MixedCharResult(_validate_mu(UniPoly(acc), e.dim), e if audit else None)


def mixed_char_poly(
    matrices: Sequence[HermitianMatrix],
    dim: Optional[int] = None,
    base: Optional[HermitianMatrix] = None,
) -> UniPoly:
    """Same value as ``apply_one_minus_partials(truncated_determinant(...)).mu``.

    Skips materialising the final block product: the signed functional of a
    product of two elements is a subset-sum pairing.
    """
    m = len(matrices)
    dim, blocks, big = _blocks(matrices, dim, base)
    if not blocks:
        return _validate_mu(UniPoly.monomial(dim), dim)
    if len(blocks) == 1:
        acc = []
        for mask, coeffs in blocks[0].items():
            s = -1 if bin(mask).count("1") & 1 else 1
            if len(acc) < len(coeffs):
                acc.extend([0] * (len(coeffs) - len(acc)))
            for k, c in enumerate(coeffs):
                acc[k] += s * c
    else:
        head = blocks[0]
        for b in blocks[1:-1]:
            head = kernels.subset_mul(head, b)
        acc = kernels.signed_pairing(head, blocks[-1], m)
    return _validate_mu(_rescale(acc, big, dim), dim)


# --- independent oracle -----------------------------------------------------------


def _leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        prod = Fraction(1)
        for r in range(n):
            prod = prod * rows[r][perm[r]]
            if not prod:
                break
        total = total - prod if inv & 1 else total + prod
    return total


def mixed_char_injection_oracle(matrices: Sequence[HermitianMatrix], dim: Optional[int] = None) -> UniPoly:
    """Signed sum over subsets S and injections S -> columns of column-replaced determinants.

    The coefficient of prod_{i in S} z_i in det(xI + sum z_i A_i) is the sum over
    injective column choices sigma of det(xI with column sigma(i) replaced by
    column sigma(i) of A_i); the x e_k columns left over factor out as
    x^(d - |S|) times a principal minor.
    """
    matrices = list(matrices)
    dim = _check_dims(matrices, dim)
    if dim > ORACLE_MAX_DIM:
        raise GuardExceeded("injection oracle dimension", dim, ORACLE_MAX_DIM)
    if len(matrices) > ORACLE_MAX_MATRICES:
        raise GuardExceeded("injection oracle matrix count", len(matrices), ORACLE_MAX_MATRICES)
    coeffs = [Fraction(0)] * (dim + 1)
    coeffs[dim] = Fraction(1)
    for size in range(1, min(len(matrices), dim) + 1):
        sign = -1 if size & 1 else 1
        for subset in combinations(range(len(matrices)), size):
            value = Fraction(0)
            for cols in permutations(range(dim), size):
                image = sorted(cols)
                pos = {c: p for p, c in enumerate(image)}
                rows = [[Fraction(0)] * size for _ in range(size)]
                for i, c in zip(subset, cols):
                    a = matrices[i].entries
                    for r, row_idx in enumerate(image):
                        rows[r][pos[c]] = a[row_idx][c]
                value = value + _leibniz_det(rows)
            if isinstance(value, ComplexRational):
                if value.im != 0:
                    raise ArithmeticError("non-real injection sum")
                value = value.re
            coeffs[dim - size] += sign * value
    return UniPoly(coeffs)
