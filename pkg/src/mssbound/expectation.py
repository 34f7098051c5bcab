"""Finite-support random vectors and the expected characteristic polynomial."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Optional, Sequence

from .algebra import HermitianMatrix, VectorC, as_rational, is_psd, loewner_leq, outer_product
from .errors import GuardExceeded
from .multilinear import mixed_char_poly
from .poly import UniPoly, char_poly

DEFAULT_GUARD = 10**6


@dataclass(frozen=True)
class SupportPoint:
    """One outcome of a random vector: probability, outer product v v^*, and v when representable.

    Lifted systems only know ``outer`` (their vectors carry sqrt(r) factors).
    """

    prob: Fraction
    outer: HermitianMatrix
    vector: Optional[VectorC] = None

    @classmethod
    def of_vector(cls, prob, vector) -> "SupportPoint":
        v = vector if isinstance(vector, VectorC) else VectorC(vector)
        return cls(as_rational(prob), outer_product(v), v)

    @property
    def norm_sq(self) -> Fraction:
        return self.outer.trace()


@dataclass(frozen=True)
class RandomVectorSpec:
    support: tuple

    def __init__(self, support: Iterable[SupportPoint]):
        pts = tuple(support)
        if not pts:
            raise ValueError("support must be nonempty")
        if any(p.prob <= 0 for p in pts):
            raise ValueError("support probabilities must be positive")
        total = sum((p.prob for p in pts), Fraction(0))
        if total != 1:
            raise ValueError(f"support probabilities sum to {total}, not 1")
        if len({p.outer.dim for p in pts}) != 1:
            raise ValueError("support vectors have different dimensions")
        object.__setattr__(self, "support", pts)

    @classmethod
    def from_vectors(cls, pairs) -> "RandomVectorSpec":
        return cls(SupportPoint.of_vector(p, v) for p, v in pairs)

    @classmethod
    def deterministic(cls, vector) -> "RandomVectorSpec":
        return cls([SupportPoint.of_vector(1, vector)])

    @classmethod
    def uniform(cls, vectors) -> "RandomVectorSpec":
        vectors = list(vectors)
        return cls.from_vectors((Fraction(1, len(vectors)), v) for v in vectors)

    @property
    def dim(self) -> int:
        return self.support[0].outer.dim

    def __len__(self):
        return len(self.support)

    def expected_outer(self) -> HermitianMatrix:
        """E v v^*."""
        acc = HermitianMatrix.zeros(self.dim)
        for p in self.support:
            acc = acc + p.outer.scale(p.prob)
        return acc

    def expected_norm_sq(self) -> Fraction:
        return sum((p.prob * p.norm_sq for p in self.support), Fraction(0))


@dataclass(frozen=True)
class Instance:
    dim: int
    specs: tuple

    def __init__(self, dim: int, specs: Sequence[RandomVectorSpec]):
        if dim < 1:
            raise ValueError("dimension must be positive")
        specs = tuple(specs)
        for i, s in enumerate(specs):
            if s.dim != dim:
                raise ValueError(f"spec {i} has dimension {s.dim}, instance has {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "specs", specs)

    @property
    def m(self) -> int:
        return len(self.specs)

    def outcome_count(self) -> int:
        return prod(len(s) for s in self.specs)

    def expected_outers(self):
        return [s.expected_outer() for s in self.specs]


@dataclass(frozen=True)
class InstanceStats:
    expected_sum: HermitianMatrix
    eps: Fraction
    sum_leq_identity: bool


def instance_stats(inst: Instance) -> InstanceStats:
    total = HermitianMatrix.zeros(inst.dim)
    for a in inst.expected_outers():
        total = total + a
    eps = max((s.expected_norm_sq() for s in inst.specs), default=Fraction(0))
    assert is_psd(total)
    return InstanceStats(total, eps, loewner_leq(total, HermitianMatrix.identity(inst.dim)))


def _check_guard(count, guard):
    if count > guard:
        raise GuardExceeded("joint outcome enumeration (use the mixed characteristic path)", count, guard)


def expected_char_poly_enumeration(inst: Instance, guard: int = DEFAULT_GUARD) -> UniPoly:
    """sum over joint outcomes of prob * det(xI - sum w_i w_i^*), lexicographic order."""
    _check_guard(inst.outcome_count(), guard)
    acc = [Fraction(0)] * (inst.dim + 1)
    zero = HermitianMatrix.zeros(inst.dim)
    for outcome in product(*(s.support for s in inst.specs)):
        weight = Fraction(1)
        total = zero
        for pt in outcome:
            weight *= pt.prob
            total = total + pt.outer
        for k, c in enumerate(char_poly(total).coeffs):
            acc[k] += weight * c
    return UniPoly(acc)


def mixed_char_of_instance(inst: Instance) -> UniPoly:
    return mixed_char_poly(inst.expected_outers(), dim=inst.dim)


def verify_determinant_identity(inst: Instance, guard: int = DEFAULT_GUARD) -> bool:
    """Expected characteristic polynomial == mixed characteristic polynomial of the E v_i v_i^*."""
    return expected_char_poly_enumeration(inst, guard) == mixed_char_of_instance(inst)
