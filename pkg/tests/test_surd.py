from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.surd import SurdDivisionError, SurdScalar, squarefree_split

positive_fractions = st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30)
small_surds = st.builds(
    lambda a, b, c: SurdScalar({1: a, 2: b, 3: c}),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
)


@pytest.mark.surd
@pytest.mark.parametrize("n, expected", [(1, (1, 1)), (8, (2, 2)), (12, (2, 3)), (45, (3, 5)), (30, (1, 30))])
def test_squarefree_split(n, expected):
    assert squarefree_split(n) == expected


@pytest.mark.surd
def test_sqrt_reduces():
    assert SurdScalar.sqrt(8) == 2 * SurdScalar.sqrt(2)
    assert SurdScalar.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert SurdScalar.sqrt(Fraction(3, 5)).terms == {15: Fraction(1, 5)}
    assert str(SurdScalar.sqrt(Fraction(3, 5))) == "1/5*sqrt(15)"


@pytest.mark.surd
def test_sqrt_negative():
    with pytest.raises(ValueError):
        SurdScalar.sqrt(-1)


@pytest.mark.surd
def test_multi_term_division():
    x = SurdScalar.sqrt(2) + SurdScalar.sqrt(3)
    assert not x.is_monomial()
    with pytest.raises(SurdDivisionError):
        1 / x


@pytest.mark.surd
@given(positive_fractions)
def test_sqrt_squares_back(q):
    r = SurdScalar.sqrt(q)
    assert r * r == q
    assert (r * r).is_rational()
    assert r.sign() == 1


@pytest.mark.surd
@given(small_surds, small_surds)
def test_additive_group(a, b):
    assert (a + b) - b == a
    assert a + b == b + a
    assert a - a == 0


@pytest.mark.surd
@given(small_surds, small_surds, small_surds)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@pytest.mark.surd
@given(positive_fractions, positive_fractions)
def test_monomial_division(p, q):
    x = SurdScalar.sqrt(p) * 3
    y = SurdScalar.sqrt(q)
    assert (x / y) * y == x
