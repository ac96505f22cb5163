from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepolytope.errors import PreconditionError
from sepolytope.poly import GammaDecomposition, IntPolynomial, gamma_decompose, is_palindromic, poly_sum

coeff_lists = st.lists(st.integers(-50, 50), max_size=8)
P = IntPolynomial


def test_arithmetic_basics():
    x = P([1, 1])
    assert x * x == P([1, 2, 1])
    assert (x - x).is_zero() and (x - x).degree == -1
    assert P([1, 4, 1])(1) == 6
    assert P([1, 4, 1]).evaluate(-1) == -2
    assert 3 * x == P([3, 3]) and x * 3 == P([3, 3])
    assert x.shift(2) == P([0, 0, 1, 1])
    assert x ** 3 == P.one_plus_t_pow(3)
    assert P.geometric(3) == P([1, 1, 1]) and P.monomial(2, 5) == P([0, 0, 5])
    assert 1 - x == P([0, -1]) and x + 1 == P([2, 1])


def test_trimming_and_equality():
    assert P([1, 0, 0]).coeffs == (1,)
    assert P([0, 0]) == P() == 0
    assert P([7]) == 7
    assert hash(P([1, 2])) == hash(P([1, 2, 0]))


def test_string_form():
    assert str(P([0, 2, 2, 2])) == "2t + 2t^2 + 2t^3"
    assert str(P([1, -1])) == "1 - t"
    assert str(P([-3])) == "-3"
    assert str(P()) == "0"


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    a, b, c = P(a), P(b), P(c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == P()


@given(coeff_lists, coeff_lists, st.integers(-4, 4))
def test_evaluation_is_a_ring_map(a, b, x):
    a, b = P(a), P(b)
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


def test_poly_sum():
    assert poly_sum([P([1]), P([0, 1]), P([0, 0, 1])]) == P([1, 1, 1])
    assert poly_sum([]) == P()


def test_palindromic():
    assert is_palindromic(P.one_plus_t_pow(3), 3)
    assert not is_palindromic(P([1, 2]), 1)
    assert is_palindromic(P([0, 2, 2, 2]), 4)
    assert not is_palindromic(P([1, 1, 1]), 1)


@pytest.mark.parametrize(
    "coeffs, d, gamma",
    [
        (P.one_plus_t_pow(4).coeffs, 4, (1, 0, 0)),
        ((0, 2, 2, 2), 4, (0, 2, -2)),
        ((1, 4, 1), 2, (1, 2)),
        ((0, 2, 10, 2), 4, (0, 2, 6)),
        ((), 3, (0, 0)),
    ],
)
def test_gamma_examples(coeffs, d, gamma):
    gd = gamma_decompose(P(coeffs), d)
    assert gd.gamma == gamma
    assert gd.expand() == P(coeffs)
    assert gd.to_json() == {"d": d, "gamma": list(gamma)}


def test_gamma_rejects_asymmetry():
    with pytest.raises(PreconditionError, match="coefficient 0"):
        gamma_decompose(P([1, 2]), 1)
    with pytest.raises(PreconditionError, match="exceeds"):
        gamma_decompose(P([1, 0, 0, 1]), 2)
    with pytest.raises(PreconditionError):
        gamma_decompose(P([1]), -1)


@given(st.integers(0, 9).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(-30, 30), min_size=d // 2 + 1, max_size=d // 2 + 1))))
def test_gamma_roundtrip(case):
    d, gamma = case
    p = GammaDecomposition(d, tuple(gamma)).expand()
    assert is_palindromic(p, d)
    assert gamma_decompose(p, d).gamma == tuple(gamma)


@given(st.integers(0, 9).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(-30, 30), min_size=d + 1, max_size=d + 1))))
def test_palindromic_inputs_reexpand(case):
    d, half = case
    coeffs = [half[min(i, d - i)] for i in range(d + 1)]
    p = P(coeffs)
    assert gamma_decompose(p, d).expand() == p


def test_nonnegativity_flags():
    assert P([0, 1, 2]).nonnegative() and not P([1, -1]).nonnegative()
    assert not gamma_decompose(P([0, 2, 2, 2]), 4).nonnegative()
