"""Constructive side: greedy descent through the interlacing family, lifting, partitions.

Every polynomial the search compares is exact; only the final root
comparisons use brackets, which are refined until they separate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .algebra import (
    HermitianMatrix,
    VectorC,
    as_rational,
    block_diag,
    loewner_leq,
    matrix_sum,
    outer_product,
)
from .errors import GuardExceeded, HypothesisViolated, InterlacingViolation, InvariantBreach
from .expectation import (
    DEFAULT_GUARD,
    Instance,
    RandomVectorSpec,
    SupportPoint,
    expected_char_poly_enumeration,
)
from .multilinear import mixed_char_poly
from .poly import DEFAULT_WIDTH, RootBracket, char_poly, compare_roots, largest_root
from .quadratic import QuadraticFieldElement, rational_sqrt

PARTITION_GUARD = 3**8


@dataclass(frozen=True)
class GreedyStep:
    index: int
    parent: RootBracket
    children: tuple
    chosen: int


@dataclass(frozen=True)
class Assignment:
    chosen: tuple
    realized_vectors: tuple  # VectorC, or None where only the outer product is known
    realized_outers: tuple
    realized_norm_bracket: tuple
    expectation_bracket: Optional[RootBracket] = None
    steps: tuple = field(default=(), repr=False)

    @property
    def realized_sum(self) -> HermitianMatrix:
        return matrix_sum(self.realized_outers, self.realized_outers[0].dim) if self.realized_outers else None


def conditional_char_poly(inst: Instance, fixed: HermitianMatrix, start: int, method: str = "mixed", guard=DEFAULT_GUARD):
    """E det(xI - fixed - sum_{i >= start} v_i v_i^*).

    ``method="mixed"`` feeds the expectations E v_i v_i^* of the still-random
    specs to the mixed characteristic polynomial with ``fixed`` as base;
    ``method="enumeration"`` sums over their joint outcomes.
    """
    rest = inst.specs[start:]
    if method == "mixed":
        return mixed_char_poly([s.expected_outer() for s in rest], dim=inst.dim, base=fixed)
    if method == "enumeration":
        shift = RandomVectorSpec([SupportPoint(Fraction(1), fixed)])
        return expected_char_poly_enumeration(Instance(inst.dim, (shift,) + rest), guard)
    raise ValueError(f"unknown method {method!r}")


def _argmin(brackets, floor):
    best = 0
    for k in range(1, len(brackets)):
        if compare_roots(brackets[k], brackets[best], floor) < 0:
            best = k
    return best


def greedy_interlacing_assignment(
    inst: Instance, width=DEFAULT_WIDTH, method: str = "mixed", guard: int = DEFAULT_GUARD
) -> Assignment:
    """Fix v_1, v_2, ... in order, each time taking the support point whose
    conditional expected characteristic polynomial has the smallest largest root.

    The interlacing property guarantees some child is no worse than its parent;
    if none is (up to ``width``) that is reported as InterlacingViolation.
    """
    width = as_rational(width)
    m = inst.m
    # per-step slack so accumulated selection error stays below ``width``
    step_w = width / (4 * (m + 1))
    floor = step_w / 4
    fixed = HermitianMatrix.zeros(inst.dim)
    parent = largest_root(conditional_char_poly(inst, fixed, 0, method, guard), step_w)
    expectation = parent
    chosen, outers, vectors, steps = [], [], [], []
    for i, spec in enumerate(inst.specs):
        kids = []
        for pt in spec.support:
            kids.append(largest_root(conditional_char_poly(inst, fixed + pt.outer, i + 1, method, guard), step_w))
        s = _argmin(kids, floor)
        if kids[s].lo > parent.hi + width:
            raise InterlacingViolation(
                f"step {i}: best child root > {float(kids[s].lo):.12g} exceeds parent root {float(parent.hi):.12g}"
            )
        steps.append(GreedyStep(i, parent, tuple(kids), s))
        pt = spec.support[s]
        chosen.append(s)
        outers.append(pt.outer)
        vectors.append(pt.vector)
        fixed = fixed + pt.outer
        parent = kids[s]
    realized = largest_root(char_poly(fixed), step_w)
    if realized.lo > expectation.hi + width:
        raise InterlacingViolation("realized largest root exceeds the expected polynomial's largest root")
    return Assignment(
        tuple(chosen), tuple(vectors), tuple(outers), (realized.lo, realized.hi), expectation, tuple(steps)
    )


def brute_force_best_assignment(inst: Instance, width=DEFAULT_WIDTH, guard: int = DEFAULT_GUARD) -> Assignment:
    """Exhaustive minimum of the largest root of det(xI - sum w w^*) over all joint outcomes."""
    width = as_rational(width)
    count = inst.outcome_count()
    if count > guard:
        raise GuardExceeded("brute-force assignment outcomes", count, guard)
    best, best_br = None, None
    for idx in product(*(range(len(s)) for s in inst.specs)):
        total = HermitianMatrix.zeros(inst.dim)
        for s, k in zip(inst.specs, idx):
            total = total + s.support[k].outer
        br = largest_root(char_poly(total), width)
        if best_br is None or compare_roots(br, best_br, width / 16) < 0:
            best, best_br = idx, br
    pts = [s.support[k] for s, k in zip(inst.specs, best)]
    return Assignment(
        tuple(best), tuple(p.vector for p in pts), tuple(p.outer for p in pts), (best_br.lo, best_br.hi)
    )


# --- lifting and partitions ----------------------------------------------------------


@dataclass(frozen=True)
class LiftedSystem:
    r: int
    base_dim: int
    lifted_specs: tuple

    @property
    def instance(self) -> Instance:
        return Instance(self.r * self.base_dim, self.lifted_specs)


def _as_vectors(vectors) -> list:
    vs = [v if isinstance(v, VectorC) else VectorC(v) for v in vectors]
    if len({v.dim for v in vs}) > 1:
        raise ValueError("vectors must share one dimension")
    return vs


def lift_for_partition(vectors: Sequence[VectorC], r: int) -> LiftedSystem:
    """Each u_i becomes a random vector equal to sqrt(r) * (u_i in block k) with probability 1/r.

    Support points are stored as outer products r * w w^*; the vector itself is
    kept only when sqrt(r) is rational.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    vs = _as_vectors(vectors)
    if not vs:
        raise ValueError("need at least one vector")
    d = vs[0].dim
    zero = HermitianMatrix.zeros(d)
    root = rational_sqrt(Fraction(r))
    prob = Fraction(1, r)
    specs = []
    for u in vs:
        uu = outer_product(u).scale(r)
        pts = []
        for k in range(r):
            blocks = [uu if b == k else zero for b in range(r)]
            vec = None
            if root is not None:
                ent = [Fraction(0)] * (r * d)
                ent[k * d:(k + 1) * d] = [root * e for e in u.entries]
                vec = VectorC(ent)
            pts.append(SupportPoint(prob, block_diag(blocks), vec))
        specs.append(RandomVectorSpec(pts))
    lifted = LiftedSystem(r, d, tuple(specs))
    # exact lifting identities
    for u, s in zip(vs, specs):
        if s.expected_norm_sq() != r * u.norm_sq():
            raise InvariantBreach("lifted E|v|^2 != r |u|^2")
    total = matrix_sum([outer_product(u) for u in vs], d)
    if matrix_sum([s.expected_outer() for s in specs], r * d) != total.block_diagonal(r):
        raise InvariantBreach("lifted expectation is not block diagonal with identical blocks")
    return lifted


def partition_bound(r: int, delta) -> QuadraticFieldElement:
    """(1/r)(1 + sqrt(r delta))^2 = (1 + r delta)/r + (2/r) sqrt(r delta)."""
    delta = as_rational(delta)
    return QuadraticFieldElement((1 + r * delta) / r, Fraction(2, r), r * delta)


@dataclass(frozen=True)
class Partition:
    blocks: tuple
    block_norm_brackets: tuple
    bound: QuadraticFieldElement
    bound_upper: Fraction
    assignment: Optional[Assignment] = field(default=None, repr=False)

    @property
    def max_norm_upper(self) -> Fraction:
        return max(hi for _, hi in self.block_norm_brackets)


def _block_brackets(vs, blocks, d, width):
    out = []
    for blk in blocks:
        total = matrix_sum([outer_product(vs[i]) for i in blk], d)
        br = largest_root(char_poly(total), width)
        out.append((br.lo, br.hi))
    return tuple(out)


def _check_partition_hypotheses(vs, delta):
    d = vs[0].dim
    if not loewner_leq(matrix_sum([outer_product(u) for u in vs], d), HermitianMatrix.identity(d)):
        raise HypothesisViolated("sum u_i u_i^* <= I", "the vectors' frame operator exceeds the identity")
    for i, u in enumerate(vs):
        if u.norm_sq() > delta:
            raise HypothesisViolated("|u_i|^2 <= delta", f"vector {i} has |u|^2 = {u.norm_sq()} > {delta}")


def partition_vectors(
    vectors: Sequence[VectorC], r: int, delta=None, width=DEFAULT_WIDTH, guard: int = DEFAULT_GUARD
) -> Partition:
    """r-way partition with every block norm <= (1/r)(1 + sqrt(r delta))^2.

    ``delta`` defaults to max |u_i|^2, the smallest admissible value.
    """
    width = as_rational(width)
    vs = _as_vectors(vectors)
    if not vs:
        raise ValueError("need at least one vector")
    delta = max(u.norm_sq() for u in vs) if delta is None else as_rational(delta)
    _check_partition_hypotheses(vs, delta)
    lifted = lift_for_partition(vs, r)
    a = greedy_interlacing_assignment(lifted.instance, width, guard=guard)
    blocks = tuple(tuple(i for i, k in enumerate(a.chosen) if k == b) for b in range(r))
    brackets = _block_brackets(vs, blocks, vs[0].dim, width)
    bound = partition_bound(r, delta)
    upper = bound.upper(DEFAULT_WIDTH)
    for k, (_, hi) in enumerate(brackets):
        if hi > upper + width:
            raise InvariantBreach(f"block {k} norm exceeds the partition bound")
    return Partition(blocks, brackets, bound, upper, a)


def brute_force_partition_oracle(
    vectors: Sequence[VectorC], r: int, width=DEFAULT_WIDTH, guard: int = PARTITION_GUARD, delta=None
) -> Partition:
    """Exhaustive minimum over all r^m labelings of the largest block norm.

    Norms depend only on the block's index set, so each of the 2^m subsets is
    solved once. Ties go to the lexicographically first labeling.
    """
    width = as_rational(width)
    vs = _as_vectors(vectors)
    m = len(vs)
    if r < 1:
        raise ValueError("r must be a positive integer")
    if r**m > guard:
        raise GuardExceeded("partition labelings", r**m, guard)
    d = vs[0].dim
    outers = [outer_product(u) for u in vs]
    cache = {}

    def norm(mask):
        br = cache.get(mask)
        if br is None:
            total = matrix_sum([outers[i] for i in range(m) if mask >> i & 1], d)
            br = cache[mask] = largest_root(char_poly(total), width)
        return br

    floor = width / 16
    best, best_br = None, None
    for labels in product(range(r), repeat=m):
        masks = [0] * r
        for i, k in enumerate(labels):
            masks[k] |= 1 << i
        worst = norm(masks[0])
        for mk in masks[1:]:
            if compare_roots(norm(mk), worst, floor) > 0:
                worst = norm(mk)
        if best_br is None or compare_roots(worst, best_br, floor) < 0:
            best, best_br = labels, worst
    blocks = tuple(tuple(i for i, k in enumerate(best) if k == b) for b in range(r))
    delta = max(u.norm_sq() for u in vs) if delta is None else as_rational(delta)
    bound = partition_bound(r, delta)
    return Partition(blocks, _block_brackets(vs, blocks, d, width), bound, bound.upper(DEFAULT_WIDTH))
