import random
from fractions import Fraction as F
from itertools import combinations

import pytest

import gen
from mssbound.algebra import HermitianMatrix, VectorC, matrix_sum, outer_product
from mssbound.errors import GuardExceeded
from mssbound.multilinear import (
    apply_one_minus_partials,
    mixed_char_injection_oracle,
    mixed_char_poly,
    truncated_determinant,
)
from mssbound.poly import UniPoly, char_poly, is_real_rooted

X = UniPoly.x()
HALF_I = HermitianMatrix.identity(2).scale(F(1, 2))


def e(d, k):
    return outer_product(VectorC.basis(d, k))


def test_truncated_determinant_examples():
    assert truncated_determinant([], dim=2).terms == {0: X * X}
    el = truncated_determinant([HermitianMatrix([[1]])])
    assert el.coefficient(()) == X and el.coefficient((0,)) == UniPoly([1])
    el = truncated_determinant([HALF_I, HALF_I])
    assert dict(el.subsets()) == {(): X * X, (0,): X, (1,): X, (0, 1): UniPoly([F(1, 2)])}


def test_mixed_char_examples():
    assert apply_one_minus_partials(truncated_determinant([HermitianMatrix([[1]])])).mu == X - 1
    assert apply_one_minus_partials(truncated_determinant([HALF_I, HALF_I])).mu == UniPoly([F(1, 2), -2, 1])
    for d in range(1, 6):
        mats = [e(d, k) for k in range(d)]
        assert mixed_char_poly(mats) == UniPoly.from_roots([1] * d)


def test_oracle_examples():
    assert mixed_char_injection_oracle([HermitianMatrix([[1]])]) == X - 1
    assert mixed_char_injection_oracle([HALF_I, HALF_I]) == UniPoly([F(1, 2), -2, 1])
    assert mixed_char_injection_oracle([], dim=3) == UniPoly.monomial(3)


def _pencil_char(mats, d, subset):
    # det(xI + sum_{i in T} A_i) is the char poly of -sum A
    return char_poly(matrix_sum([mats[i] for i in subset], d).scale(-1))


def test_rank_one_coefficients_by_inclusion_exclusion():
    rng = random.Random(21)
    for _ in range(40):
        d, m = rng.randint(1, 3), rng.randint(1, 4)
        mats = [gen.psd(rng, d, rank=1, bound=4) for _ in range(m)]
        el = truncated_determinant(mats)
        for size in range(m + 1):
            for subset in combinations(range(m), size):
                expect = UniPoly()
                for k in range(size + 1):
                    for t in combinations(subset, k):
                        term = _pencil_char(mats, d, t)
                        expect = expect + (term if (size - k) % 2 == 0 else -term)
                assert el.coefficient(subset) == expect


def test_oracle_equivalence_random():
    rng = random.Random(22)
    for _ in range(60):
        d, m = rng.randint(1, 4), rng.randint(0, 5)
        mats = [gen.psd(rng, d, bound=3) for _ in range(m)]
        mu = apply_one_minus_partials(truncated_determinant(mats, dim=d)).mu
        assert mu == mixed_char_injection_oracle(mats, dim=d)
        assert mu == mixed_char_poly(mats, dim=d)
        assert mu.is_monic() and mu.degree == d and is_real_rooted(mu)


def test_zero_matrices_give_power_of_x():
    for d in (1, 3):
        zeros = [HermitianMatrix.zeros(d)] * 3
        assert mixed_char_poly(zeros) == UniPoly.monomial(d)
        assert apply_one_minus_partials(truncated_determinant(zeros)).mu == UniPoly.monomial(d)


def test_permutation_invariance():
    rng = random.Random(23)
    for _ in range(20):
        d, m = rng.randint(1, 3), rng.randint(2, 5)
        mats = [gen.psd(rng, d, bound=3) for _ in range(m)]
        shuffled = mats[:]
        rng.shuffle(shuffled)
        assert mixed_char_poly(mats) == mixed_char_poly(shuffled)


def test_base_shift_matches_explicit_sum():
    # conditional form: fixed part B enters as det(xI - B + sum z_i A_i)
    rng = random.Random(24)
    for _ in range(20):
        d = rng.randint(1, 3)
        fixed = [gen.psd(rng, d, rank=1, bound=3) for _ in range(2)]
        rest = [gen.psd(rng, d, bound=3) for _ in range(2)]
        assert mixed_char_poly(rest, base=matrix_sum(fixed, d)) == mixed_char_poly(fixed + rest)


def test_audit_keeps_terms():
    res = apply_one_minus_partials(truncated_determinant([HALF_I, HALF_I]), audit=True)
    assert res.subset_terms is not None and len(res.subset_terms.terms) == 4
    assert apply_one_minus_partials(truncated_determinant([HALF_I])).subset_terms is None


def test_errors():
    with pytest.raises(ValueError):
        truncated_determinant([HermitianMatrix.identity(2), HermitianMatrix.identity(3)])
    with pytest.raises(ValueError):
        truncated_determinant([])
    with pytest.raises(GuardExceeded):
        mixed_char_injection_oracle([HermitianMatrix.identity(7)])
    with pytest.raises(GuardExceeded):
        mixed_char_injection_oracle([HermitianMatrix.identity(1)] * 9)
