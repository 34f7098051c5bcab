import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
from mssbound.algebra import (
    ComplexRational,
    HermitianMatrix,
    VectorC,
    is_pd,
    is_psd,
    loewner_leq,
    operator_norm,
    outer_product,
    trace_of_product,
    trace_product_bound_holds,
)
from mssbound.poly import char_poly, largest_root

TOL = F(1, 2**40)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=8)
gauss = st.builds(ComplexRational, rationals, rationals)


def test_complex_arithmetic():
    a = ComplexRational(1, 2)
    b = ComplexRational(F(1, 2), -1)
    assert a * b == ComplexRational(F(5, 2), 0)
    assert (a / b) * b == a
    assert a + F(1, 2) == ComplexRational(F(3, 2), 2)
    assert F(1) - a == ComplexRational(0, -2)
    assert a.conjugate() * a == 5
    assert ComplexRational(3, 0) == F(3)
    assert hash(ComplexRational(3, 0)) == hash(F(3))


def test_matrix_validation():
    with pytest.raises(ValueError):
        HermitianMatrix([[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        HermitianMatrix([[ComplexRational(1, 1)]])
    with pytest.raises(TypeError):
        HermitianMatrix([[0.5]])
    m = HermitianMatrix([[1, ComplexRational(0, 1)], [ComplexRational(0, -1), 2]])
    assert not m.is_real
    assert m.trace() == 3


def test_outer_product_examples():
    assert outer_product(VectorC([1, 0])) == HermitianMatrix([[1, 0], [0, 0]])
    assert outer_product(VectorC([0, 0])) == HermitianMatrix.zeros(2)
    half = outer_product(VectorC([F(1, 2), F(1, 2)]))
    assert half == HermitianMatrix([[F(1, 4), F(1, 4)], [F(1, 4), F(1, 4)]])
    assert half.trace() == F(1, 2)


def test_is_psd_examples():
    assert is_psd(HermitianMatrix([[1, 0], [0, 0]]))
    assert not is_psd(HermitianMatrix([[1, 0], [0, -1]]))
    assert is_psd(HermitianMatrix([[F(1, 4), F(1, 4)], [F(1, 4), F(1, 4)]]))
    # zero pivot with a nonzero residual row
    assert not is_psd(HermitianMatrix([[0, 1], [1, 0]]))
    assert not is_psd(HermitianMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 1]]))


def test_loewner_examples():
    i2 = HermitianMatrix.identity(2)
    assert loewner_leq(HermitianMatrix.zeros(2), i2)
    assert loewner_leq(i2, i2)
    assert not loewner_leq(HermitianMatrix.diagonal([F(1, 2), F(3, 2)]), i2)
    with pytest.raises(ValueError):
        loewner_leq(i2, HermitianMatrix.identity(3))


def test_trace_product_examples():
    rng = random.Random(3)
    y = gen.psd(rng, 2)
    assert trace_product_bound_holds(HermitianMatrix.identity(2), y, 1)
    x = HermitianMatrix.diagonal([2, 0])
    y = HermitianMatrix.diagonal([0, 3])
    assert trace_of_product(x, y) == 0
    assert trace_product_bound_holds(x, y, 2)
    i2 = HermitianMatrix.identity(2)
    assert trace_of_product(i2, i2) == 2
    assert trace_product_bound_holds(i2, i2, 1)
    with pytest.raises(ValueError):
        trace_product_bound_holds(HermitianMatrix.diagonal([1, -1]), i2, 1)


def test_operator_norm_examples():
    assert abs(operator_norm(HermitianMatrix.identity(3), TOL) - 1) <= TOL
    assert abs(operator_norm(HermitianMatrix.diagonal([2, 0]), TOL) - 2) <= TOL
    m = HermitianMatrix([[1, F(1, 2)], [F(1, 2), 1]])
    # 2x2 eigenvalues: (a+c)/2 +- sqrt(((a-c)/2)^2 + |b|^2) = 1 +- 1/2
    assert abs(operator_norm(m, TOL) - F(3, 2)) <= TOL


@settings(max_examples=60, deadline=None)
@given(st.lists(st.one_of(rationals, gauss), min_size=1, max_size=4))
def test_outer_product_is_psd_with_exact_trace(entries):
    v = VectorC(entries)
    m = outer_product(v)
    assert is_psd(m)
    expect = sum((e.re**2 + e.im**2) if isinstance(e, ComplexRational) else e * e for e in entries)
    assert m.trace() == expect


def test_loewner_partial_order():
    rng = random.Random(11)
    for _ in range(60):
        d = rng.randint(1, 3)
        a = gen.matrix(rng, d, bound=4)
        b = a + gen.psd(rng, d, bound=3)
        c = b + gen.psd(rng, d, bound=3)
        assert loewner_leq(a, a)
        assert loewner_leq(a, b) and loewner_leq(b, c) and loewner_leq(a, c)
        if loewner_leq(b, a):
            assert a == b
        other = gen.matrix(rng, d, bound=4)
        if loewner_leq(a, other) and loewner_leq(other, a):
            assert a == other


def _psd_by_char_poly(m):
    # Hermitian M >= 0 iff det(xI - M) has alternating-sign coefficients
    c = char_poly(m).coeffs
    d = m.dim
    return all((-1) ** (d - k) * c[k] >= 0 for k in range(d + 1))


def test_is_psd_matches_char_poly_signs():
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for _ in range(300):
        d = rng.choice([2, 3])
        m = gen.psd(rng, d, bound=3) if rng.random() < 0.5 else gen.matrix(rng, d, bound=3)
        if rng.random() < 0.3:
            m = m - HermitianMatrix.identity(d).scale(F(rng.randint(0, 2), 4))
        got = is_psd(m)
        seen[got] += 1
        assert got == _psd_by_char_poly(m)
        if is_pd(m):
            assert got
    assert seen[True] > 20 and seen[False] > 20


def test_trace_product_bound_random():
    rng = random.Random(8)
    for _ in range(100):
        d = rng.randint(1, 4)
        x, y = gen.psd(rng, d), gen.psd(rng, d)
        lam = F(0) if x.is_zero() else largest_root(char_poly(x), TOL).hi
        assert trace_product_bound_holds(x, y, lam + TOL)
