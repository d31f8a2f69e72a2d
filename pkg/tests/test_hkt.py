from fractions import Fraction

import pytest

from modules.chevalley import ReductiveAlgebra, invariant_metric
from modules.hkt import (
    LevelCountMismatch,
    compare_table2,
    decompose_paths,
    enumerate_table2,
    hkt_coset,
    hypercomplex_triple,
    joyce_decompose,
    level_count,
    peel_type,
    table2_printed,
    verify_cond,
    verify_hkt,
)
from modules.utils import linalg


def row_keys(name: str) -> set[tuple[str, int, int]]:
    return {(r.k, r.m, r.d) for r in enumerate_table2(name)}


@pytest.mark.hkt
def test_a4_levels(a4_levels):
    assert a4_levels.level_count == 2
    assert [lv.psi.simple_coeffs for lv in a4_levels.levels] == [(1, 1, 1, 1), (0, 1, 1, 0)]
    assert [lv.parent for lv in a4_levels.levels] == ["A4", "A2"]
    assert len(a4_levels.levels[0].f) == 6
    assert len(a4_levels.levels[1].f) == 2
    assert a4_levels.k_semisimple == "0"
    assert a4_levels.required_extra() == 0


@pytest.mark.hkt
def test_a4_u_generators(a4_levels):
    gens = a4_levels.u_generators()
    assert [g.h_coefficients for g in gens] == [(3, 1, -1, -3), (0, 1, -1, 0)]
    assert [g.normalization2 for g in gens] == [Fraction(1, 15), Fraction(1, 3)]
    killing = a4_levels.u_generators(invariant_metric(a4_levels.algebra, "killing"))
    assert {g.target_norm2 for g in killing} == {20}
    u1, u2 = a4_levels.u_vectors()
    assert sum(x * y for x, y in zip(u1, u2)) == 0


@pytest.mark.hkt
@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"])
def test_level_conditions(name):
    ld = joyce_decompose(ReductiveAlgebra.of(name))
    report = verify_cond(ld)
    assert report.passed, report.failures()


@pytest.mark.hkt
@pytest.mark.parametrize("name", ["A4", "A5", "B4", "C3", "D5", "E6", "F4", "G2"])
@pytest.mark.parametrize("stop_level", [None, 1])
def test_u_directions_complete_the_cartan(name, stop_level):
    g = ReductiveAlgebra.of(name)
    ld = joyce_decompose(g, stop_level=stop_level)
    us = ld.u_vectors()
    h_psi = [g.coroot_vector(lv.ideal, lv.psi) for lv in ld.levels]
    k = [g.coroot_vector(i, a) for i, c in ld.remaining for a in c.simple_roots]
    for x, u in enumerate(us):
        assert all(linalg.dot(u, v) == 0 for v in us[x + 1 :] + h_psi + k)
    assert len(us) + len(h_psi) + linalg.rank(k) == g.rank


@pytest.mark.hkt
@pytest.mark.parametrize("name, levels", [("A1", 1), ("A2", 1), ("A3", 2), ("B3", 3), ("G2", 2), ("D4", 4)])
def test_level_count(name, levels):
    assert level_count(name) == levels


@pytest.mark.hkt
def test_peel_type():
    assert peel_type("E8") == (("E7",), 0)
    assert peel_type("A3") == (("A1",), 1)
    assert peel_type("A1") == ((), 0)
    assert peel_type("D4") == (("A1", "A1", "A1"), 0)
    assert peel_type("E6") == (("A5",), 0)
    assert peel_type("A5") == (("A3",), 1)
    children, u = peel_type("D5")
    assert sorted(children) == ["A1", "A3"] and u == 0


@pytest.mark.hkt
def test_a1_needs_a_u1():
    ld = joyce_decompose(ReductiveAlgebra.of("A1"))
    assert ld.required_extra() == 1
    assert ld.required_extra(k_u1=0) == 1
    d = hkt_coset(ld)
    assert d.dim_m == 4
    triple = hypercomplex_triple(ld)
    assert verify_hkt(ld, triple).passed


@pytest.mark.hkt
def test_too_few_directions():
    ld = joyce_decompose(ReductiveAlgebra.of("A1"))
    with pytest.raises(LevelCountMismatch):
        hypercomplex_triple(ld, u1_append=0)


@pytest.mark.hkt
def test_su3_is_hkt(a2_levels):
    triple = hypercomplex_triple(a2_levels)
    assert triple.I1.dim == 8
    report = verify_hkt(a2_levels, triple)
    assert report.passed, report.failures()


@pytest.mark.hkt
def test_b2_one_level():
    ld = joyce_decompose(ReductiveAlgebra.of("B2"), stop_level=1)
    assert ld.k_descriptor() == "A1"
    assert ld.required_extra() == 1
    triple = hypercomplex_triple(ld)
    assert triple.coset.dim_m == 8
    assert verify_hkt(ld, triple).passed


@pytest.mark.hkt
def test_phi_signs_and_validation(a2_levels):
    triple = hypercomplex_triple(a2_levels, phi_signs=[-1])
    assert verify_hkt(a2_levels, triple).passed
    with pytest.raises(ValueError):
        hypercomplex_triple(a2_levels, phi_signs=[2])
    with pytest.raises(ValueError):
        hypercomplex_triple(a2_levels, basis_choice=[1])


@pytest.mark.hkt
@pytest.mark.slow
@pytest.mark.parametrize("name", ["A4", "C3"])
def test_full_decomposition_is_hkt(name):
    ld = joyce_decompose(ReductiveAlgebra.of(name))
    assert verify_cond(ld).passed
    report = verify_hkt(ld, hypercomplex_triple(ld))
    assert report.passed, report.failures()


@pytest.mark.hkt
@pytest.mark.parametrize(
    "name, row",
    [
        ("E8", ("E7", 1, 116)),
        ("G2", ("0", 2, 16)),
        ("G2", ("A1", 1, 12)),
        ("A3", ("A1", 0, 12)),
        ("A3", ("A1+u(1)", 1, 12)),
        ("C2", ("A1", 1, 8)),
        ("A2", ("0", 0, 8)),
        ("A2", ("u(1)", 1, 8)),
    ],
)
def test_table2_rows(name, row):
    assert row in row_keys(name)


@pytest.mark.hkt
def test_table2_rows_are_built():
    for name in ("A3", "A4", "B3", "D5", "G2", "F4"):
        rows = enumerate_table2(name)
        assert all(r.d % 4 == 0 for r in rows)
        assert all(r.verified for r in rows), [r for r in rows if not r.verified]


@pytest.mark.hkt
@pytest.mark.parametrize("name", ["A2", "A3", "A4", "A5", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4"])
def test_table2_matches_closed_forms(name):
    report = compare_table2(name)
    assert report.passed, report.failures()
    assert report.info["corrections"] == []


@pytest.mark.hkt
@pytest.mark.slow
@pytest.mark.parametrize("name", ["E6", "E7", "E8"])
def test_table2_exceptional(name):
    report = compare_table2(name)
    assert report.passed, report.failures()
    if name in ("E7", "E8"):
        assert report.info["corrections"]


@pytest.mark.hkt
def test_printed_rows_satisfy_dimension_identity():
    for name in ("A5", "B4", "C3", "D6", "E7"):
        assert all(r.verified for r in table2_printed(name))


@pytest.mark.hkt
def test_decompose_paths_d4():
    paths = decompose_paths("D4", 2)
    assert {tuple(lv.parent for lv in ld.levels) for ld in paths} == {("D4", "A1")}
