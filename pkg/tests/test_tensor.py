from fractions import Fraction

import pytest

from modules.surd import SurdScalar
from modules.tensor import (
    AltForm,
    Endomorphism,
    NotAlmostComplex,
    hermitian,
    krawtchouk,
    proportionality,
    pure_part,
    torsion_type,
    type_split,
)


def standard_complex(n: int) -> Endomorphism:
    """I e_{2k} = e_{2k+1}, I e_{2k+1} = -e_{2k}."""
    cols = []
    for k in range(0, n, 2):
        cols.append({k + 1: Fraction(1)})
        cols.append({k: Fraction(-1)})
    return Endomorphism(n, cols)


@pytest.mark.tensor
def test_altform_sign_and_repeats():
    w = AltForm(2, 4, {(1, 0): 1})
    assert w.get((0, 1)) == -1
    assert w.get((1, 0)) == 1
    assert w.get((1, 1)) == 0
    w.accumulate((2, 2), 5)
    assert w.nonzero() == [((0, 1), -1)]
    assert (w + AltForm(2, 4, {(0, 1): 1})).is_zero()


@pytest.mark.tensor
def test_endomorphism_algebra():
    I = standard_complex(4)
    assert I.square_is_minus_identity()
    assert I.compose(I) == Endomorphism.identity(4).scaled(-1)
    assert (I - I).is_zero()
    assert I.commutator(I).is_zero()
    assert I.apply({0: 2, 3: 1}) == {1: 2, 2: -1}


@pytest.mark.tensor
@pytest.mark.parametrize(
    "k, t, p, expected",
    [(2, 0, 1, 2), (2, 1, 1, 0), (2, 2, 1, -2), (3, 0, 2, 3), (4, 4, 2, 6), (4, 1, 0, -1)],
)
def test_krawtchouk(k, t, p, expected):
    assert krawtchouk(k, t, p) == expected


@pytest.mark.tensor
def test_kahler_form_is_11():
    I = standard_complex(4)
    omega = AltForm(2, 4, {(0, 1): 1, (2, 3): 1})
    split = type_split(omega, I)
    assert split.vanishes(0) and split.vanishes(2)
    assert split.real_pair(1) == omega
    re, im = split.reconstruct()
    assert re == omega
    assert im.is_zero()


@pytest.mark.tensor
def test_anti_invariant_form_is_20():
    I = standard_complex(4)
    omega = AltForm(2, 4, {(0, 2): 1, (1, 3): -1})
    split = type_split(omega, I)
    assert split.vanishes(1)
    assert split.real_pair(2) == omega


@pytest.mark.tensor
def test_torsion_type_detects_pure_part():
    I = standard_complex(6)
    # real part of dz0 dz1 dz2
    pure = AltForm(3, 6, {(0, 2, 4): 1, (0, 3, 5): -1, (1, 2, 5): -1, (1, 3, 4): -1})
    assert pure_part(pure, I) == pure
    check = torsion_type(pure, I)
    assert not check.passed
    assert check.witness is not None

    mixed = AltForm(3, 6, {(0, 1, 2): 1, (2, 3, 4): Fraction(1, 2)})
    assert pure_part(mixed, I).is_zero()
    assert torsion_type(mixed, I).passed


@pytest.mark.tensor
def test_type_split_needs_complex_structure():
    with pytest.raises(NotAlmostComplex):
        type_split(AltForm(2, 2, {(0, 1): 1}), Endomorphism.identity(2))


@pytest.mark.tensor
def test_hermitian():
    I = standard_complex(4)
    assert hermitian([1, 1, 3, 3], I).passed
    bad = hermitian([1, 2, 1, 1], I)
    assert not bad.passed
    assert bad.witness == [0, 0]


@pytest.mark.tensor
def test_proportionality():
    assert proportionality({0: 2, 1: 4}, {0: 1, 1: 2}) == 2
    assert proportionality({0: 1}, {0: 1, 1: 1}) is None
    assert proportionality({2: 1}, {0: 1}) is None
    assert proportionality({}, {}) == 0
    assert proportionality({0: 1}, {}) is None
    r = SurdScalar.sqrt(2)
    assert proportionality({0: r, 1: 3 * r}, {0: 1, 1: 3}) == r
