import random
from fractions import Fraction as F

import mpmath
import pytest

import gen
from mssbound.algebra import ComplexRational, HermitianMatrix, VectorC, outer_product
from mssbound.barrier import (
    EvaluationPoint,
    barrier_value,
    certify_theorem2,
    check_barrier_shift,
    is_above_roots_det,
    shifted_barrier_value,
)
from mssbound.errors import HypothesisViolated, NotAboveRoots, PreconditionFail
from mssbound.poly import UniPoly

HALF_I = HermitianMatrix.identity(2).scale(F(1, 2))


def ident(d):
    return [outer_product(VectorC.basis(d, k)) for k in range(d)]


def _mpc(v):
    if isinstance(v, ComplexRational):
        return mpmath.mpc(mpmath.mpf(v.re.numerator) / v.re.denominator, mpmath.mpf(v.im.numerator) / v.im.denominator)
    v = F(v)
    return mpmath.mpf(v.numerator) / v.denominator


def _p_numeric(mats, x, z):
    d = mats[0].dim
    rows = [[_mpc(x) if j == k else mpmath.mpf(0) for k in range(d)] for j in range(d)]
    for zi, a in zip(z, mats):
        for j in range(d):
            for k in range(d):
                rows[j][k] += zi * _mpc(a.entries[j][k])
    return mpmath.re(mpmath.det(mpmath.matrix(rows)))


def test_barrier_examples():
    one = [HermitianMatrix([[1]])]
    assert barrier_value(one, EvaluationPoint(4, [0]), 0) == F(1, 4)
    assert barrier_value([HALF_I], EvaluationPoint(4, [0]), 0) == F(1, 4)
    zero = [HermitianMatrix.zeros(2), HALF_I]
    assert barrier_value(zero, EvaluationPoint(3, [5, 1]), 0) == 0


def test_above_roots_examples():
    assert is_above_roots_det(ident(3), EvaluationPoint(2, [-1, -1, -1]))
    rng = random.Random(1)
    mats = [gen.psd(rng, 2) for _ in range(3)]
    assert is_above_roots_det(mats, EvaluationPoint(1, [0, 0, 0]))
    assert not is_above_roots_det([HermitianMatrix([[1]])], EvaluationPoint(1, [-1]))
    with pytest.raises(NotAboveRoots):
        barrier_value([HermitianMatrix([[1]])], EvaluationPoint(1, [-1]), 0)


def test_barrier_matches_numeric_log_derivative():
    rng = random.Random(41)
    h = mpmath.mpf(2) ** -20
    with mpmath.workdps(60):
        checked = 0
        for _ in range(40):
            mats, pt, i, _, _ = gen.barrier_shift_tuple(rng)
            exact = barrier_value(mats, pt, i)
            z = [_mpc(v) for v in pt.z]
            zp, zm = list(z), list(z)
            zp[i] += h
            zm[i] -= h
            p0 = _p_numeric(mats, pt.x, z)
            num = (_p_numeric(mats, pt.x, zp) - _p_numeric(mats, pt.x, zm)) / (2 * h * p0)
            ref = _mpc(exact)
            if exact == 0:
                assert abs(num) < mpmath.mpf(2) ** -30
            else:
                assert abs(num - ref) <= abs(ref) * mpmath.mpf(2) ** -10
            checked += 1
        assert checked == 40


def test_barrier_monotone_along_increasing_rays():
    rng = random.Random(42)
    for _ in range(30):
        mats, pt, i, _, _ = gen.barrier_shift_tuple(rng)
        dx = F(rng.randint(0, 3), 2)
        dz = [F(rng.randint(0, 3), 2) for _ in pt.z]
        prev = barrier_value(mats, pt, i)
        for step in range(1, 5):
            q = EvaluationPoint(pt.x + step * dx, [z + step * w for z, w in zip(pt.z, dz)])
            assert is_above_roots_det(mats, q)
            cur = barrier_value(mats, q, i)
            assert cur <= prev
            prev = cur


def test_shift_examples():
    one = [HermitianMatrix([[1]])]
    pt = EvaluationPoint(4, [0])
    assert shifted_barrier_value(one, pt, 0, 0, 2)[1] == F(1, 5)
    assert check_barrier_shift(one, pt, 0, 0, 2)
    inert = [HermitianMatrix([[1]]), HermitianMatrix.zeros(1)]
    pt2 = EvaluationPoint(4, [0, 0])
    assert shifted_barrier_value(inert, pt2, 0, 1, 2)[1] == F(1, 4)
    assert check_barrier_shift(inert, pt2, 0, 1, 2)
    mats = ident(3)
    assert check_barrier_shift(mats, EvaluationPoint(4, [0, 0, 0]), 0, 1, 2)


def test_shift_precondition():
    one = [HermitianMatrix([[1]])]
    with pytest.raises(PreconditionFail):
        check_barrier_shift(one, EvaluationPoint(4, [0]), 0, 0, 1)
    with pytest.raises(NotAboveRoots):
        check_barrier_shift(one, EvaluationPoint(1, [-2]), 0, 0, 5)


def test_shift_random():
    rng = random.Random(43)
    for _ in range(40):
        mats, pt, i, j, delta = gen.barrier_shift_tuple(rng)
        assert check_barrier_shift(mats, pt, i, j, delta)


def test_certificate_examples():
    for d in (1, 2, 3):
        cert = certify_theorem2(ident(d), 1)
        assert cert.certified and cert.mu == UniPoly.from_roots([1] * d)
        assert cert.x_threshold_sq_form == (2, 2) and float(cert.x_threshold) == 4.0
    cert = certify_theorem2([HALF_I, HALF_I], 1)
    assert cert.certified and cert.mu == UniPoly([F(1, 2), -2, 1])
    assert abs(float(cert.root_bracket.mid) - 1.7071067811865475) < 1e-9
    assert cert.phi_upper < 1 and cert.delta >= 1 / (1 - cert.phi_bound)


def test_certificate_irrational_threshold():
    cert = certify_theorem2([HALF_I.scale(F(1, 2))], F(1, 2))
    assert cert.certified
    assert cert.x_threshold.as_tuple() == (F(3, 2), F(2), F(1, 2))
    assert abs(float(cert.x_threshold) - (1 + 0.5**0.5) ** 2) < 1e-12
    assert cert.root_bracket.hi <= cert.threshold_upper + F(1, 2**40)


def test_certificate_hypotheses():
    with pytest.raises(HypothesisViolated, match="Tr A_i"):
        certify_theorem2([HermitianMatrix.identity(2)], 1)
    with pytest.raises(HypothesisViolated, match="sum A_i"):
        certify_theorem2([HermitianMatrix.identity(2), HALF_I], 2)
    with pytest.raises(HypothesisViolated, match="semidefinite"):
        certify_theorem2([HermitianMatrix.diagonal([1, -1])], 2)
    with pytest.raises(HypothesisViolated, match="eps > 0"):
        certify_theorem2([HermitianMatrix.zeros(2)], 0)


def test_certificate_random():
    rng = random.Random(44)
    for eps in (F(1, 4), F(1, 2), F(1), F(2)):
        for _ in range(8):
            d, mats = gen.certificate_tuple(rng, eps)
            cert = certify_theorem2(mats, eps, dim=d)
            assert cert.certified
            assert cert.root_bracket.hi <= cert.threshold_upper + F(1, 2**40)
