from fractions import Fraction

import pytest

from modules.chevalley import (
    NonPositiveScale,
    ReductiveAlgebra,
    bracket,
    cartan_element,
    compact_basis,
    compact_bracket,
    invariant_metric,
    killing_scale,
    verify_ident,
    verify_invariance,
    verify_jacobi,
)


@pytest.mark.chevalley
@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4"])
def test_ident_and_jacobi(table, name):
    t = table(name)
    ident = verify_ident(t)
    assert ident.passed, ident.failures()
    jacobi = verify_jacobi(t)
    assert jacobi.passed, jacobi.failures()


@pytest.mark.chevalley
@pytest.mark.slow
@pytest.mark.parametrize("name", ["D4", "F4", "E6"])
def test_ident_and_jacobi_large(table, name):
    t = table(name)
    assert verify_ident(t).passed
    assert verify_jacobi(t).passed


@pytest.mark.chevalley
@pytest.mark.parametrize("name, largest", [("A3", 1), ("B3", 2), ("G2", 3)])
def test_string_bound(table, name, largest):
    assert table(name).max_abs() == largest


@pytest.mark.chevalley
def test_mutated_table_is_caught(root_system, table):
    rs = root_system("A2")
    a1, a2 = rs.simple_roots
    broken = table("A2").mutated(a1, a2)
    report = verify_ident(broken)
    assert not report.passed
    assert not report.get("antisymmetry").passed
    assert not verify_jacobi(broken).passed


@pytest.mark.chevalley
def test_mutated_needs_a_root_sum(root_system, table):
    rs = root_system("A2")
    a1 = rs.simple_roots[0]
    with pytest.raises(KeyError):
        table("A2").mutated(a1, a1)


@pytest.mark.chevalley
@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4"])
def test_killing_scale_type_a(root_system, name):
    r = int(name[1:])
    assert killing_scale(root_system(name)) == 2 * (r + 1)


@pytest.mark.chevalley
@pytest.mark.parametrize("spec, abelian", [(("A2",), 0), (("B2",), 0), (("A1", "A1"), 1), (("G2",), 0)])
def test_metric_is_invariant(spec, abelian):
    g = ReductiveAlgebra.of(*spec, abelian_dim=abelian)
    assert verify_invariance(invariant_metric(g)).passed
    assert verify_invariance(invariant_metric(g, "killing")).passed


@pytest.mark.chevalley
def test_non_positive_scale():
    g = ReductiveAlgebra.of("A1", abelian_dim=1)
    with pytest.raises(NonPositiveScale):
        invariant_metric(g, 0)
    with pytest.raises(NonPositiveScale):
        invariant_metric(g, 1, -1)


@pytest.mark.chevalley
def test_highest_root_acts_by_two():
    g = ReductiveAlgebra.of("A2")
    rs = g.simple_ideals[0]
    psi = rs.highest_root
    h = cartan_element(g.coroot_vector(0, psi))
    e_plus = {("E+", 0, psi.simple_coeffs): Fraction(1)}
    e_minus = {("E-", 0, psi.simple_coeffs): Fraction(1)}
    assert bracket(g, h, e_plus) == {("E-", 0, psi.simple_coeffs): 2}
    assert bracket(g, h, e_minus) == {("E+", 0, psi.simple_coeffs): -2}


@pytest.mark.chevalley
def test_su2_brackets_close():
    g = ReductiveAlgebra.of("A1")
    e_plus, e_minus, h = compact_basis(g)
    assert compact_bracket(g, e_plus, e_minus) == {h: 2}
    assert compact_bracket(g, h, e_plus) == {e_minus: 2}
    assert compact_bracket(g, h, e_minus) == {e_plus: -2}


@pytest.mark.chevalley
def test_abelian_factor_is_central():
    g = ReductiveAlgebra.of("A1", abelian_dim=1)
    u = cartan_element(g.abelian_unit(0))
    for x in compact_basis(g):
        assert compact_bracket(g, x, x) == {}
    assert bracket(g, u, {("E+", 0, (1,)): Fraction(1)}) == {}
    assert g.dimension == 4
    assert g.name() == "A1+u(1)"
