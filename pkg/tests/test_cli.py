from io import StringIO

import pytest

from launch import run
from modules import config
from modules.cli import serialize


def invoke(*argv: str) -> tuple[int, str]:
    out = StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def invoke_json(*argv: str) -> tuple[int, dict]:
    code, text = invoke(*argv, "--json")
    return code, serialize.loads(text.encode())


@pytest.mark.cli
def test_hkt_a1_reports_required_u1():
    code, doc = invoke_json("decompose-hkt", "--algebra", "A1")
    assert code == 0
    assert doc["command"] == "decompose-hkt"
    assert doc["passed"] is True
    assert doc["data"]["required_extra_u1"] == 1
    assert doc["data"]["hkt"]["report"]["passed"] is True
    assert doc["meta"]["tool_version"] == config.TOOL_VERSION


@pytest.mark.cli
def test_hkt_too_few_u1_is_skipped():
    code, doc = invoke_json("decompose-hkt", "--algebra", "A1", "--extra-u1", "0")
    assert code == 0
    assert doc["data"]["hkt"] is None
    assert "hkt_skipped" in doc["data"]


@pytest.mark.cli
def test_table2_g2():
    code, doc = invoke_json("table2", "--algebra", "G2")
    assert code == 0
    (entry,) = doc["data"]
    rows = {(r["k"], r["m"], r["d"]) for r in entry["rows"]}
    assert ("0", 2, 16) in rows
    assert entry["comparison"]["passed"] is True


@pytest.mark.cli
def test_kt_group_manifold():
    code, doc = invoke_json("decompose-kt", "--algebra", "A2", "--colour", "-")
    assert code == 0
    assert doc["data"]["coset"]["dim_m"] == 8
    assert doc["data"]["positivity"] is not None


@pytest.mark.cli
def test_kt_odd_dimension_fails_verification():
    code, doc = invoke_json("decompose-kt", "--algebra", "B2", "--colour", "1")
    assert code == 1
    assert doc["passed"] is False
    (check,) = doc["data"]["report"]["checks"]
    assert check["name"] == "even_dimension"
    assert check["witness"] == 7


@pytest.mark.cli
def test_kt_extra_u1_from_flag():
    code, doc = invoke_json("decompose-kt", "--algebra", "B2", "--colour", "1", "--extra-u1", "1")
    assert code == 0
    assert doc["data"]["coset"]["dim_m"] == 8


@pytest.mark.cli
def test_kt_requires_colour():
    code, _ = invoke("decompose-kt", "--algebra", "A2")
    assert code == 2


@pytest.mark.cli
@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--algebra", "X9"),
        ("verify", "--algebra", "E5"),
        ("decompose-kt", "--algebra", "A2", "--colour", "7"),
        ("decompose-kt", "--algebra", "A2", "--exam", "1"),
        ("decompose-hkt", "--algebra", "A2", "--k-u1", "-1"),
        ("no-such-command",),
    ],
)
def test_bad_input_exits_2(argv):
    code, out = invoke(*argv)
    assert code == 2
    assert out == ""


@pytest.mark.cli
def test_rank_cap_flag():
    code, _ = invoke("verify", "--algebra", "A4", "--max-rank", "3")
    assert code == 2


@pytest.mark.cli
def test_rank_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MAX_RANK", "3")
    code, _ = invoke("verify", "--algebra", "A4")
    assert code == 2
    assert config.runtime_env_vars.max_rank == 3
    # an explicit flag still wins
    code, _ = invoke("verify", "--algebra", "A2", "--max-rank", "8")
    assert code == 0


@pytest.mark.cli
def test_verify_reductive():
    code, doc = invoke_json("verify", "--algebra", "A1xA1xU1", "--normalization", "killing")
    assert code == 0
    names = {c["name"] for c in doc["data"]["checks"]}
    assert {"A1.antisymmetry", "A1.jacobi", "ad_invariance"} <= names


@pytest.mark.cli
def test_kt_e8_colouring_in_catalog_numbering():
    code, doc = invoke_json("decompose-kt", "--algebra", "E8", "--colour", "2,3,4,5,8")
    assert code == 1
    assert doc["data"]["coset"]["k"] == "D4+A1"
    assert doc["data"]["coset"]["dim_m"] == 217
    assert len(doc["data"]["h_one"]) == 3


@pytest.mark.cli
def test_catalog_text():
    code, text = invoke("catalog", "--algebra", "E8")
    assert code == 0
    assert "E8" in text
    assert "248" in text
    assert "node numbering" in text


@pytest.mark.cli
def test_catalog_respects_rank_cap():
    code, doc = invoke_json("catalog", "--max-rank", "2")
    assert code == 0
    assert [e["name"] for e in doc["data"]] == ["A1", "A2", "B2", "G2"]


@pytest.mark.cli
def test_json_is_reproducible():
    first = invoke("decompose-hkt", "--algebra", "A2", "--json")
    second = invoke("decompose-hkt", "--algebra", "A2", "--json")
    assert first == second


@pytest.mark.cli
def test_text_is_reproducible():
    assert invoke("table2", "--algebra", "A3") == invoke("table2", "--algebra", "A3")


@pytest.mark.cli
def test_qkt_su3():
    code, doc = invoke_json("qkt", "--algebra", "A2")
    assert code == 0
    assert doc["data"]["quotient"]["dim"] == 4
    assert doc["data"]["report"]["info"]["torsion_vanishes"] is True


@pytest.mark.cli
def test_qkt_text():
    code, text = invoke("qkt", "--algebra", "A1xA1")
    assert code == 0
    assert "quotient by U(2)" in text


@pytest.mark.cli
@pytest.mark.slow
def test_table3():
    code, doc = invoke_json("table3")
    assert code == 0
    assert len(doc["data"]) == 6
