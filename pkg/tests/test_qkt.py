from fractions import Fraction

import pytest

from modules.chevalley import ReductiveAlgebra, invariant_metric
from modules.hkt import Table2Row, joyce_decompose
from modules.qkt import (
    RationalizationFailed,
    diagonal_u2_example,
    dh_type_analysis,
    embed_u2,
    enumerate_table3,
    factor_name,
    helmert_rows,
    mai_basis,
    product_name,
    qkt_decompose,
    quotient_factors,
    quotient_label,
    rotation_summing_to,
    verify_mai,
    verify_qkt,
    wolf_name,
)
from modules.surd import SurdScalar


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), SurdScalar())


@pytest.fixture(scope="module")
def cp2(a2_levels):
    return qkt_decompose(embed_u2(a2_levels))


@pytest.mark.qkt
@pytest.mark.parametrize("a", [[1, 1, 1], [1, 2, 2], [SurdScalar.sqrt(3), 1, SurdScalar.sqrt(Fraction(1, 2))]])
def test_helmert_rows_orthonormal(a):
    rows = helmert_rows(a)
    n = len(a)
    for i in range(n):
        for j in range(n):
            assert dot(rows[i], rows[j]) == (1 if i == j else 0)


@pytest.mark.qkt
def test_rotation_column_sums():
    a = [SurdScalar.sqrt(Fraction(3, 2)), SurdScalar.sqrt(Fraction(1, 2))]
    O = rotation_summing_to(a)
    for k in range(2):
        assert O[0][k] + O[1][k] == a[k]
    assert dot(O[0], O[1]) == 0
    assert dot(O[0], O[0]) == 1


@pytest.mark.qkt
def test_cp2_quotient(cp2):
    assert cp2.hkt.dim_m == 8
    assert cp2.dim == 4
    report = verify_qkt(cp2)
    assert report.passed, report.failures()
    assert report.info["torsion_vanishes"] is True


@pytest.mark.qkt
def test_cp2_embedding_closes(cp2):
    closure = cp2.emb.closure()
    assert closure.passed, closure.failures()
    assert all(isinstance(x, Fraction) for x in cp2.emb.direction)


@pytest.mark.qkt
def test_cp2_dh_analysis(cp2):
    dh = dh_type_analysis(cp2)
    assert dh.passed
    assert dh.info["f_over_J"] == ["1", "1", "1"]
    assert dh.info["f_proportional_to_J"] is True


@pytest.mark.qkt
def test_diagonal_u2():
    q = diagonal_u2_example()
    assert q.dim == 4
    assert q.levels == 2
    report = verify_qkt(q)
    assert report.passed, report.failures()
    assert report.info["torsion_vanishes"] is True
    assert verify_mai(q.emb).passed
    parts = mai_basis(q.emb)
    assert len(parts["K"]) == 4
    assert len(parts["M"]) == 4


@pytest.mark.qkt
def test_diagonal_u2_label():
    q = diagonal_u2_example()
    assert quotient_factors(q) == (["SU(2)", "SU(2)", "U(1)", "U(1)"], ["U(2)"])
    assert quotient_label(q, True) == ("S^1xS^3", "new QK space")
    assert quotient_label(q, False) == ("U(2)^2/U(2)", "QKT")


@pytest.mark.qkt
def test_wolf_and_flat_labels(cp2):
    assert quotient_label(cp2, True) == ("CP^2", "Wolf space")
    flat = qkt_decompose(embed_u2(joyce_decompose(ReductiveAlgebra.of(abelian_dim=8))))
    assert quotient_label(flat, True) == ("x^4U(1)", "flat space")


@pytest.mark.qkt
@pytest.mark.parametrize(
    "names, product",
    [
        (["SU(2)", "U(1)"], "U(2)"),
        (["SU(2)", "SU(2)", "U(1)"], "SU(2)xU(2)"),
        (["SU(3)", "U(1)", "U(1)"], "SU(3)xU(1)^2"),
        ([], "1"),
    ],
)
def test_product_names(names, product):
    assert product_name(names) == product


@pytest.mark.qkt
def test_flat_quotient():
    ld = joyce_decompose(ReductiveAlgebra.of(abelian_dim=8))
    q = qkt_decompose(embed_u2(ld))
    assert q.levels == 0
    assert q.dim == 4
    report = verify_qkt(q)
    assert report.passed
    assert report.info["fj"] == "not applicable"


@pytest.mark.qkt
def test_incommensurate_levels():
    g = ReductiveAlgebra.of("A1", "A1", abelian_dim=2)
    ld = joyce_decompose(g)
    with pytest.raises(RationalizationFailed):
        embed_u2(ld, metric=invariant_metric(g, [1, 2]), search_cap=8)


@pytest.mark.qkt
def test_commensurate_levels_rationalize():
    g = ReductiveAlgebra.of("A1", "A1", abelian_dim=2)
    ld = joyce_decompose(g)
    emb = embed_u2(ld, metric=invariant_metric(g, [1, 4]))
    assert emb.closure().passed
    assert len(emb.groups) == 2


@pytest.mark.qkt
@pytest.mark.slow
def test_su5_quotient(a4_levels):
    q = qkt_decompose(embed_u2(a4_levels))
    assert q.dim == 20
    report = verify_qkt(q)
    assert report.passed, report.failures()
    assert verify_mai(q.emb).passed


@pytest.mark.qkt
@pytest.mark.parametrize(
    "row, name",
    [
        (Table2Row(g="A2", k="0", m=0, d=8), "SU(3)"),
        (Table2Row(g="A1", k="0", m=1, d=4), "U(2)"),
        (Table2Row(g="B2", k="A1", m=1, d=8), "{Sp(2)/Sp(1)}xU(1)"),
        (Table2Row(g="A2", k="u(1)", m=1, d=8), "{SU(3)xU(1)}/U(1)"),
    ],
)
def test_factor_names(row, name):
    assert factor_name(row) == name


@pytest.mark.qkt
@pytest.mark.parametrize("name, wolf", [("A2", "CP^2"), ("B2", "S^4"), ("C3", "HP^2"), ("G2", "G2/SO(4)")])
def test_wolf_names(name, wolf):
    assert wolf_name(name) == wolf


@pytest.mark.qkt
@pytest.mark.slow
def test_eight_dimensional_classification():
    rows = enumerate_table3()
    assert {(r.hkt, r.qkt, r.comment) for r in rows} == {
        ("x^8U(1)", "x^4U(1)", "flat space"),
        ("U(2)x^4U(1)", "-", "-"),
        ("U(2)xU(2)", "S^1xS^3", "new QK space"),
        ("SU(3)", "CP^2", "Wolf space"),
        ("{SU(3)xU(1)}/U(1)", "CP^2", "Wolf space"),
        ("{Sp(2)/Sp(1)}xU(1)", "S^4", "Wolf space"),
    }
    assert all(r.checks.get("hkt") for r in rows)
