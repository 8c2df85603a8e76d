import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from reflekt.exact import (
    CycNum,
    ExactError,
    MultiPoly,
    PolyT,
    SeriesT,
    cyc_reduce,
    cyclotomic_polynomial,
    euler_phi,
    poly_divide_exact,
    poly_from_ints,
    poly_one_minus_Tk,
    series_inverse,
    series_of_poly,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyc_reduce_examples():
    assert cyc_reduce({1: 1}, 1) == 1
    assert cyc_reduce({0: 1, 1: 1, 2: 1}, 3) == 0
    assert cyc_reduce({2: 1}, 4) == -1
    with pytest.raises(ValueError):
        cyc_reduce({0: 1}, 0)


def test_reduction_idempotent_and_periodic():
    x = CycNum(12, {0: 1, 5: Fraction(3, 2), 11: -2})
    again = CycNum(12, dict(x.coeffs))
    assert x == again and x.coeffs == again.coeffs
    assert CycNum.zeta(12) ** 12 == 1


def test_conjugation():
    z = CycNum.zeta(5)
    assert z.conjugate() == z ** 4
    assert (z + 3).conjugate().conjugate() == z + 3


def test_promotion_and_cross_conductor_equality():
    z3_at_6 = CycNum.zeta(6) ** 2
    assert z3_at_6 == CycNum.zeta(3)
    assert CycNum.rational(7, N=12) == 7


def test_inverse():
    x = CycNum.zeta(7) + 2
    assert x * x.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        CycNum.zero().inverse()


def test_json_roundtrip():
    x = CycNum(8, {1: Fraction(2, 3), 3: -1})
    j = x.to_json()
    assert j["N"] == 8
    exps = [t[0] for t in j["terms"]]
    assert exps == sorted(exps)
    assert CycNum.from_json(j) == x


small_rat = st.integers(-4, 4)


@st.composite
def cyc_numbers(draw, N=None):
    if N is None:
        N = draw(st.integers(1, 24))
    phi = euler_phi(N)
    n_terms = draw(st.integers(0, min(3, phi)))
    raw = {}
    for _ in range(n_terms):
        e = draw(st.integers(0, N - 1))
        num = draw(st.integers(-4, 4))
        den = draw(st.integers(1, 4))
        raw[e] = Fraction(num, den)
    return CycNum(N, raw)


@given(st.integers(1, 24), st.data())
@settings(max_examples=150, deadline=None)
def test_field_axioms(N, data):
    x = data.draw(cyc_numbers(N=N))
    y = data.draw(cyc_numbers(N=N))
    z = data.draw(cyc_numbers(N=N))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not x.is_zero():
        assert x * x.inverse() == 1


@given(cyc_numbers())
@settings(max_examples=150, deadline=None)
def test_conjugation_involution_and_norm(x):
    assert x.conjugate().conjugate() == x
    norm = (x * x.conjugate()).to_complex()
    assert abs(norm.imag) < 1e-12
    assert norm.real >= -1e-12


@given(cyc_numbers())
@settings(max_examples=100, deadline=None)
def test_embedding_matches_arithmetic(x):
    # the embedding is a ring homomorphism
    y = x * x + 3
    assert abs(y.to_complex() - (x.to_complex() ** 2 + 3)) < 1e-9


# -- PolyT / SeriesT ---------------------------------------------------------

def test_series_inverse_examples():
    geom = series_inverse(poly_from_ints(1, -1), 3)
    assert geom == series_of_poly(poly_from_ints(1, 1, 1, 1), 3)
    assert series_inverse(poly_from_ints(1), 5) == series_of_poly(poly_from_ints(1), 5)
    inv = series_inverse(poly_from_ints(1, 1, 1), 2)
    assert inv == series_of_poly(poly_from_ints(1, -1), 2)
    with pytest.raises(ExactError):
        series_inverse(poly_from_ints(0, 1), 4)


@given(st.lists(small_rat, min_size=1, max_size=6), st.integers(0, 8))
@settings(max_examples=100, deadline=None)
def test_series_inverse_multiplies_back(coeffs, order):
    if coeffs[0] == 0:
        coeffs[0] = 1
    p = poly_from_ints(*coeffs)
    inv = series_inverse(p, order)
    prod = series_of_poly(p, order) * inv
    assert prod == series_of_poly(poly_from_ints(1), order)


def test_poly_divide_exact_examples():
    q = poly_divide_exact(poly_one_minus_Tk(2), poly_one_minus_Tk(1))
    assert q == poly_from_ints(1, 1)
    with pytest.raises(ExactError):
        poly_divide_exact(poly_one_minus_Tk(3), poly_one_minus_Tk(2))
    prod = poly_one_minus_Tk(2) * poly_one_minus_Tk(4)
    assert poly_divide_exact(prod, poly_one_minus_Tk(2)) == poly_one_minus_Tk(4)


def test_poly_degree_sentinel():
    assert PolyT([]).degree == -1
    assert PolyT([0, 0]).degree == -1
    assert poly_from_ints(0, 1).degree == 1


def test_series_never_reports_beyond_order():
    s = series_of_poly(poly_from_ints(1, 2, 3, 4), 2)
    with pytest.raises(IndexError):
        s[3]


def test_reversed_shift():
    p = poly_from_ints(0, 1, 1)  # T + T^2
    assert p.reversed_shift(3) == poly_from_ints(0, 1, 1)
    assert p.reversed_shift(2) == poly_from_ints(1, 1)
    with pytest.raises(ExactError):
        p.reversed_shift(1)


# -- MultiPoly ---------------------------------------------------------------

def test_multipoly_basics():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert f.homogeneous_degree() == 2
    with pytest.raises(ExactError):
        (f + MultiPoly.constant(2, 1)).homogeneous_degree()
    assert MultiPoly.zero(2).homogeneous_degree() is None


def test_multipoly_euler():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = x * x * y
    assert f.euler() == f * 3


def test_multipoly_compose_matrix():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    swap = [[CycNum.zero(), CycNum.one()], [CycNum.one(), CycNum.zero()]]
    assert (x * x).compose_matrix(swap) == y * y
    assert (x + 2 * y).compose_matrix(swap) == y + 2 * x


def test_multipoly_divide_exact():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = (x + y) ** 3
    assert f.divide_exact(x + y) == (x + y) ** 2
    with pytest.raises(ExactError):
        (x * x + y).divide_exact(x + y)


def test_multipoly_evaluate():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = x * x + 3 * y
    assert f.evaluate([Fraction(2), Fraction(5)]) == 19
    assert abs(f.evaluate_complex([2 + 0j, 5 + 0j]) - 19) < 1e-12
