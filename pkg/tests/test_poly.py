from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from atomcharge.poly import ONE, LaurentPoly, parse

v = LaurentPoly.monomial


def test_add_mul_shift():
    assert v(2) + v(2) == LaurentPoly({2: 2})
    assert (1 + v(2)) * v(-2) == v(-2) + 1
    assert LaurentPoly({0: 2}).shift(-4) == LaurentPoly({-4: 2})


def test_zero_is_empty():
    p = v(3) - v(3)
    assert p.coeffs == {}
    assert not p
    assert p == 0


def test_eval_one():
    assert (v(2) + v(4)).eval_one() == 2
    assert LaurentPoly().eval_one() == 0
    assert (1 + v(2)).eval_one() == 2


def test_as_q_poly():
    assert (v(2) + v(4)).as_q_poly() == {1: 1, 2: 1}
    assert ONE.as_q_poly() == {0: 1}
    assert v(1).as_q_poly() == {Fraction(1, 2): 1}


def test_text_form():
    assert (v(2) + v(4)).to_text() == "v^2 + v^4"
    assert LaurentPoly({-4: 1, 0: 2}).to_text() == "v^-4 + 2"
    assert LaurentPoly({1: -1, 3: 2}).to_text() == "-v + 2v^3"
    assert LaurentPoly().to_text() == "0"
    assert (v(2) + v(4)).to_text("q") == "q + q^2"
    assert LaurentPoly({1: 1, 3: -2}).to_text("q") == "q^(1/2) - 2q^(3/2)"


def test_json_form():
    p = LaurentPoly({-4: 1, 0: 2})
    assert p.to_json() == {"v_coeffs": {"-4": 1, "0": 2}}
    assert LaurentPoly.from_json(p.to_json()) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse("v^x")
    with pytest.raises(ValueError):
        parse("v^(1/2)")


polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * ONE == a
    assert a + LaurentPoly() == a
    assert a - a == LaurentPoly()


@given(polys, st.integers(-5, 5))
def test_shift_is_monomial_product(a, k):
    assert a.shift(k) == a * v(k)


@given(polys)
def test_parse_roundtrip(a):
    assert parse(a.to_text()) == a
    assert parse(a.to_text("q")) == a
