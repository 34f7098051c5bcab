"""Seeded random generators for exact test instances."""
from fractions import Fraction
from math import isqrt

from mssbound.algebra import ComplexRational, HermitianMatrix, VectorC, matrix_sum, outer_product
from mssbound.expectation import Instance, RandomVectorSpec
from mssbound.poly import char_poly, largest_root


def rational(rng, bound=8, allow_zero=True):
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or allow_zero:
            return q


def scalar(rng, bound=8, complex_prob=0.25):
    re = rational(rng, bound)
    if rng.random() < complex_prob:
        return ComplexRational(re, rational(rng, bound))
    return re


def vector(rng, d, bound=8, complex_prob=0.25):
    return VectorC(scalar(rng, bound, complex_prob) for _ in range(d))


def matrix(rng, d, bound=8, complex_prob=0.25):
    """Random Hermitian (not necessarily PSD) matrix."""
    rows = [[Fraction(0)] * d for _ in range(d)]
    for j in range(d):
        rows[j][j] = rational(rng, bound)
        for k in range(j + 1, d):
            v = scalar(rng, bound, complex_prob)
            rows[j][k] = v
            rows[k][j] = v.conjugate() if isinstance(v, ComplexRational) else v
    return HermitianMatrix(rows)


def psd(rng, d, rank=None, bound=4, complex_prob=0.25):
    rank = rng.randint(0, d) if rank is None else rank
    return matrix_sum([outer_product(vector(rng, d, bound, complex_prob)) for _ in range(rank)], d)


def random_instance(rng, dmax=3, mmax=4, smax=3, bound=8, complex_prob=0.25, dmin=1, mmin=0):
    d = rng.randint(dmin, dmax)
    m = rng.randint(mmin, mmax)
    specs = []
    for _ in range(m):
        s = rng.randint(1, smax)
        weights = [rng.randint(1, bound) for _ in range(s)]
        total = sum(weights)
        specs.append(
            RandomVectorSpec.from_vectors(
                (Fraction(w, total), vector(rng, d, bound, complex_prob)) for w in weights
            )
        )
    return Instance(d, specs)


def lambda_max_upper(m: HermitianMatrix) -> Fraction:
    if m.is_zero():
        return Fraction(0)
    return largest_root(char_poly(m), Fraction(1, 1024)).hi


def vector_scale_for(total: HermitianMatrix) -> Fraction:
    """Rational c with c^2 * total <= I (c = 1 if already there)."""
    lam = lambda_max_upper(total)
    if lam <= 1:
        return Fraction(1)
    c = Fraction(isqrt(int(Fraction(4096) / lam)), 64)
    return c if c > 0 else Fraction(1, isqrt(int(lam) + 1) + 1)


def scaled_instance(inst: Instance, c: Fraction) -> Instance:
    specs = [RandomVectorSpec.from_vectors((p.prob, p.vector.scaled(c)) for p in s.support) for s in inst.specs]
    return Instance(inst.dim, specs)


def valid_instance(rng, **kw):
    """Random instance rescaled so that E sum v v^* <= I."""
    inst = random_instance(rng, **kw)
    total = matrix_sum(inst.expected_outers(), inst.dim)
    return scaled_instance(inst, vector_scale_for(total))


def certificate_tuple(rng, eps, dmax=4, mmax=5, bound=4, complex_prob=0.25):
    """PSD A_1..A_m with sum <= I and every trace <= eps."""
    d = rng.randint(1, dmax)
    m = rng.randint(1, mmax)
    mats = [psd(rng, d, bound=bound, complex_prob=complex_prob) for _ in range(m)]
    lam = lambda_max_upper(matrix_sum(mats, d))
    c = Fraction(1) if lam <= 1 else 1 / lam
    tr = max(a.trace() for a in mats) * c
    if tr > eps:
        c *= eps / tr
    if rng.random() < 0.3:
        # leave slack below both hypotheses
        c *= rng.choice([Fraction(1, 2), Fraction(3, 4), Fraction(7, 8)])
    return d, [a.scale(c) for a in mats]


def vector_system(rng, mmax=8, dmax=4, bound=6, complex_prob=0.2):
    d = rng.randint(1, dmax)
    m = rng.randint(1, mmax)
    vs = [vector(rng, d, bound, complex_prob) for _ in range(m)]
    total = matrix_sum([outer_product(v) for v in vs], d)
    c = vector_scale_for(total)
    return [v.scaled(c) for v in vs]


def barrier_shift_tuple(rng, dmax=3, mmax=4, bound=3):
    """(matrices, point, i, j, delta) with the point above the roots and delta >= 1/(1 - Phi^i)."""
    from mssbound.barrier import EvaluationPoint, barrier_value, is_above_roots_det

    d = rng.randint(1, dmax)
    m = rng.randint(1, mmax)
    mats = [psd(rng, d, bound=bound) for _ in range(m)]
    z = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(m)]
    x = Fraction(rng.randint(1, 8), rng.randint(1, 3))
    i, j = rng.randrange(m), rng.randrange(m)
    while True:
        pt = EvaluationPoint(x, z)
        if is_above_roots_det(mats, pt):
            phi = barrier_value(mats, pt, i)
            if phi < 1:
                break
        x *= 2
    delta = 1 / (1 - phi) + Fraction(rng.randint(0, 4), rng.randint(1, 4))
    return mats, pt, i, j, delta
