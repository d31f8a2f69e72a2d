from fractions import Fraction

import pytest

from modules.chevalley import ReductiveAlgebra, invariant_metric
from modules.kt import (
    E8_EXAM,
    NotRegular,
    OddDimension,
    complex_structure,
    coset_from_colouring,
    e8_example,
    kt_structure,
    positivity_from_regular,
    solve_cartan_pairing,
    verify_kt,
    verify_positivity,
)
from modules.rootsys import InvalidColouring
from modules.utils import linalg


def rho_like(g: ReductiveAlgebra):
    """Sum of the simple coroots of the first ideal: positive on every simple root of A_r."""
    rs = g.simple_ideals[0]
    return linalg.combine([1] * rs.rank, [g.coroot_vector(0, a) for a in rs.simple_roots])


@pytest.fixture(scope="module")
def su3():
    return coset_from_colouring(ReductiveAlgebra.of("A2"), [[]])


@pytest.mark.kt
def test_group_manifold_su3(su3):
    assert su3.dim_m == 8
    assert su3.dim_k == 0
    eps, I = kt_structure(su3)
    assert verify_positivity(su3, eps).passed
    report = verify_kt(su3, I)
    assert report.passed, report.failures()
    assert report.square and report.integrable and report.hermitian


@pytest.mark.kt
def test_flag_with_explicit_seed(su3):
    eps, I = kt_structure(su3, rho_like(su3.algebra))
    assert eps.positive_count() == 3
    assert verify_kt(su3, I).passed


@pytest.mark.kt
def test_flipped_sign_breaks_closure(su3):
    eps = positivity_from_regular(su3, rho_like(su3.algebra))
    psi = su3.algebra.simple_ideals[0].highest_root
    bad = eps.flipped(0, psi)
    positivity = verify_positivity(su3, bad)
    assert not positivity.get("what2").passed
    report = verify_kt(su3, complex_structure(su3, bad))
    assert report.square
    assert not report.integrable


@pytest.mark.kt
def test_zero_lambda_is_not_regular(su3):
    with pytest.raises(NotRegular) as e:
        positivity_from_regular(su3, linalg.zeros(3))
    assert e.value.witness is not None


@pytest.mark.kt
def test_a3_over_a1():
    d = coset_from_colouring(ReductiveAlgebra.of("A3"), [[1]])
    assert d.dim_m == 12
    assert d.k_descriptor == "A1"
    _, I = kt_structure(d)
    assert verify_kt(d, I).passed


@pytest.mark.kt
def test_killing_normalization_keeps_kt():
    g = ReductiveAlgebra.of("B2")
    d = coset_from_colouring(g, [[]], metric=invariant_metric(g, "killing"))
    _, I = kt_structure(d)
    assert verify_kt(d, I).passed


@pytest.mark.kt
def test_with_metric_recomputes_complement():
    # k = u(1) spanned by H_alpha + U: its complement depends on c_a
    g = ReductiveAlgebra.of("A1", abelian_dim=1)
    h, u = g.simple_cartan_basis()
    d = coset_from_colouring(g, [[]], [linalg.add(h, u)])
    d4 = d.with_metric(invariant_metric(g, c_a=4))
    inner = d4.metric.cartan_inner
    assert len(d4.h_m) == 1 and d4.dim_m == d.dim_m
    assert all(inner(v, w) == 0 for v in d4.h_m for w in d4.h_k)
    assert linalg.primitive(d4.h_m[0]) == linalg.primitive(linalg.sub(linalg.scale(2, h), u))


@pytest.mark.kt
def test_with_metric_keeps_orthogonal_h_m(su3):
    d = su3.with_metric(invariant_metric(su3.algebra, "killing"))
    assert d.h_m == su3.h_m


@pytest.mark.kt
def test_odd_dimension():
    d = coset_from_colouring(ReductiveAlgebra.of("B2"), [[1]])
    assert d.dim_m == 7
    with pytest.raises(OddDimension):
        kt_structure(d)


@pytest.mark.kt
def test_extra_u1_fixes_parity():
    d = coset_from_colouring(ReductiveAlgebra.of("B2"), [[1]], extra_u1=1)
    assert d.dim_m == 8
    _, I = kt_structure(d)
    assert verify_kt(d, I).passed


@pytest.mark.kt
def test_colouring_errors():
    g = ReductiveAlgebra.of("A2")
    with pytest.raises(InvalidColouring):
        coset_from_colouring(g, [[1], [1]])
    with pytest.raises(InvalidColouring):
        coset_from_colouring(g, [[4]])
    # a u(1) along a coloured coroot
    with pytest.raises(InvalidColouring):
        coset_from_colouring(g, [[1]], [g.coroot_vector(0, g.simple_ideals[0].simple_roots[0])])


@pytest.mark.kt
def test_cartan_pairing_ratios():
    pairing = solve_cartan_pairing([[2, 0], [0, 8]])
    assert pairing.r_squared() == [Fraction(1, 4)]
    with pytest.raises(OddDimension):
        solve_cartan_pairing([[1]])


@pytest.mark.kt
@pytest.mark.parametrize("a, b", E8_EXAM)
def test_e8_variant_dimensions(a, b):
    d = e8_example(a, b)
    assert d.dim_m == {(0, 1): 218, (1, 0): 216, (2, 1): 216, (3, 0): 214}[(a, b)]
    assert d.delta_k[0].type_name == "D4+A1"


@pytest.mark.kt
def test_e8_without_extras_is_odd():
    assert e8_example(0, 0).dim_m == 217


@pytest.mark.kt
@pytest.mark.slow
def test_e8_variant_is_kt():
    d = e8_example(1, 0)
    _, I = kt_structure(d)
    assert verify_kt(d, I).passed
