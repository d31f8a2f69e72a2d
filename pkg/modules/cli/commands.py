import argparse
import logging
from dataclasses import dataclass
from typing import Any, Callable

from modules.chevalley import (
    ReductiveAlgebra,
    invariant_metric,
    verify_ident,
    verify_invariance,
    verify_jacobi,
)
from modules.cli.params import (
    AlgebraParams,
    CatalogParams,
    HKTParams,
    KTParams,
    QKTParams,
    TableParams,
    parse_colours,
    parse_rational_list,
    parse_vector_list,
)
from modules.hkt import (
    LevelCountMismatch,
    compare_table2,
    enumerate_table2,
    hypercomplex_triple,
    joyce_decompose,
    table2_printed,
    verify_cond,
    verify_hkt,
)
from modules.kt import (
    E8_EXAM,
    coset_from_colouring,
    e8_example,
    kt_structure,
    verify_kt,
    verify_positivity,
)
from modules.qkt import dh_type_analysis, embed_u2, enumerate_table3, qkt_decompose, verify_mai, verify_qkt
from modules.rootsys import (
    FAMILIES,
    AlgebraType,
    InvalidRank,
    build_root_system,
    canonical_name,
    cartan_matrix,
    diagram_automorphisms,
    extended_diagram,
    node_numbering,
    parse_algebra,
    plain_diagram,
)
from modules.utils import env, linalg
from modules.utils.constants import (
    DEFAULT_MAX_RANK,
    DEFAULT_NORMALIZATION,
    DEFAULT_PEEL_ORDER,
    DEFAULT_SEARCH_CAP,
)
from modules.utils.report import CheckResult, Report

logger = logging.getLogger(__name__)

# largest rank with an HKT factor of dimension at most eight
TABLE3_MAX_RANK = 4


@dataclass
class CommandResult:
    command: str
    data: Any
    passed: bool = True


def simple_types(max_rank: int) -> list[AlgebraType]:
    """Every simple type up to max_rank, one name per isomorphism class."""
    out = []
    for fam in FAMILIES:
        for r in range(1, max_rank + 1):
            try:
                t = AlgebraType(fam, r)
            except InvalidRank:
                continue
            if canonical_name(t.name) == t.name:
                out.append(t)
    return out


def metric_for(g: ReductiveAlgebra, normalization: str):
    return invariant_metric(g, "killing" if normalization == "killing" else None)


def _over_simple_basis(g: ReductiveAlgebra, coeffs, what: str):
    basis = g.simple_cartan_basis()
    if len(coeffs) != len(basis):
        raise ValueError(f"{what} needs {len(basis)} coefficients over H_alpha_i and U_a, got {len(coeffs)}")
    return linalg.combine(list(coeffs), basis)


# --- commands --------------------------------------------------------------------------


def catalog(p: CatalogParams) -> CommandResult:
    types = [parse_algebra(p.algebra)] if p.algebra else simple_types(p.max_rank)
    entries = []
    for t in types:
        rs = build_root_system(t)
        entries.append(
            {
                "name": t.name,
                "rank": rs.rank,
                "dimension": rs.dimension,
                "positive_roots": len(rs.positive_roots),
                "highest_root": list(rs.highest_root.simple_coeffs),
                "nodes": node_numbering(rs),
                "cartan_matrix": [list(r) for r in cartan_matrix(rs)],
                "extended_diagram": extended_diagram(rs).to_json(),
                "automorphisms": len(diagram_automorphisms(plain_diagram(rs))),
            }
        )
    return CommandResult("catalog", entries)


def decompose_kt(p: KTParams) -> CommandResult:
    if p.exam is not None:
        d = e8_example(p.exam, dict(E8_EXAM)[p.exam])
        if p.normalization == "killing":
            d = d.with_metric(metric_for(d.algebra, p.normalization))
        extended = d.algebra
    else:
        g = p.reductive
        extended = g.with_abelian(p.extra_u1)
        k_u1 = [_over_simple_basis(extended, v, "--k-u1") for v in p.k_u1]
        d = coset_from_colouring(g, p.colour, k_u1, p.extra_u1, metric_for(extended, p.normalization))
    data = {
        "coset": d.to_json(),
        "h_one": [d.h_coefficients(v) for v in d.h_one()],
        "positivity": None,
    }
    if d.dim_m % 2:
        logger.warning("dim m = %d is odd, no complex structure", d.dim_m)
        report = Report(subject=f"KT {d.algebra.name()} / {d.k_descriptor}")
        report.add(
            CheckResult(
                name="even_dimension",
                passed=False,
                witness=d.dim_m,
                detail="append a u(1) with --extra-u1 or move one into k with --k-u1",
            )
        )
        data["report"] = report.to_json()
        return CommandResult("decompose-kt", data, False)
    lam = _over_simple_basis(extended, p.seed_lambda, "--seed-lambda") if p.seed_lambda else None
    eps, I = kt_structure(d, lam)
    report = verify_kt(d, I)
    report.extend(verify_positivity(d, eps))
    data["positivity"] = eps.to_json()
    data["report"] = report.to_json()
    return CommandResult("decompose-kt", data, report.passed)


def decompose_hkt(p: HKTParams) -> CommandResult:
    g = p.reductive
    ld = joyce_decompose(g, p.stop_level, peel_a1_first=p.peel_order == "a1-first")
    cond = verify_cond(ld)
    data = {
        "levels": ld.to_json(),
        "k": ld.k_descriptor(p.k_u1),
        "required_extra_u1": ld.required_extra(p.k_u1),
        "cond": cond.to_json(),
        "hkt": None,
    }
    passed = cond.passed
    extra = ld.required_extra(p.k_u1) if p.extra_u1 is None else p.extra_u1
    try:
        triple = hypercomplex_triple(ld, extra, p.k_u1, metric=metric_for(g.with_abelian(extra), p.normalization))
    except LevelCountMismatch as e:
        logger.warning("no hypercomplex structure: %s", e)
        data["hkt_skipped"] = str(e)
    else:
        report = verify_hkt(ld, triple)
        data["hkt"] = {"coset": triple.coset.to_json(), "pairing": triple.to_json()["pairing"], "report": report.to_json()}
        passed = passed and report.passed
    return CommandResult("decompose-hkt", data, passed)


def verify(p: AlgebraParams) -> CommandResult:
    g = p.reductive
    report = Report(subject=f"algebra {g.name()}")
    for rs, table in zip(g.simple_ideals, g.tables):
        report.extend(verify_ident(table), prefix=f"{rs.algebra.name}.")
        report.extend(verify_jacobi(table), prefix=f"{rs.algebra.name}.")
    report.extend(verify_invariance(metric_for(g, p.normalization)))
    return CommandResult("verify", report.to_json(), report.passed)


def table2(p: TableParams) -> CommandResult:
    types = [parse_algebra(p.algebra)] if p.algebra else simple_types(p.max_rank)
    out, passed = [], True
    for t in types:
        cmp = compare_table2(t)
        passed = passed and cmp.passed
        out.append(
            {
                "g": t.name,
                "rows": [r.model_dump() for r in enumerate_table2(t)],
                "printed": [r.model_dump() for r in table2_printed(t)],
                "comparison": cmp.to_json(),
            }
        )
    return CommandResult("table2", out, passed)


def table3(p: TableParams) -> CommandResult:
    rows = enumerate_table3(min(p.max_rank, TABLE3_MAX_RANK), p.search_cap)
    passed = all(r.checks.get("hkt", False) for r in rows)
    return CommandResult("table3", [r.model_dump() for r in rows], passed)


def qkt(p: QKTParams) -> CommandResult:
    g = p.reductive
    ld = joyce_decompose(g, p.stop_level, peel_a1_first=p.peel_order == "a1-first")
    extra = ld.required_extra(p.k_u1) if p.extra_u1 is None else p.extra_u1
    metric = metric_for(g.with_abelian(extra), p.normalization)
    emb = embed_u2(ld, p.k_u1, extra, search_cap=p.search_cap, metric=metric)
    q = qkt_decompose(emb)
    report = verify_qkt(q)
    closure = emb.closure()
    if emb.levels_used:
        closure.add(verify_mai(emb))
    dh = dh_type_analysis(q)
    data = {
        "quotient": q.to_json(),
        "report": report.to_json(),
        "embedding": closure.to_json(),
        "dh": dh.to_json(),
    }
    return CommandResult("qkt", data, report.passed and closure.passed and dh.passed)


# --- flag / environment merge ----------------------------------------------------------


def _algebra_fields(args: argparse.Namespace) -> dict:
    return {
        "algebra": env.get_and_update_env(args, "algebra", None, str),
        "max_rank": env.get_and_update_env(args, "max_rank", DEFAULT_MAX_RANK, int),
        "normalization": env.get_and_update_env(args, "normalization", DEFAULT_NORMALIZATION, str.lower),
    }


def _hkt_fields(args: argparse.Namespace) -> dict:
    return {
        **_algebra_fields(args),
        "stop_level": env.get_and_update_env(args, "stop_level", None, int),
        "k_u1": env.get_and_update_env(args, "k_u1", 0, int),
        "extra_u1": env.get_and_update_env(args, "extra_u1", None, int),
        "peel_order": env.get_and_update_env(args, "peel_order", DEFAULT_PEEL_ORDER, str.lower),
    }


def process_catalog_args(args) -> CatalogParams:
    return CatalogParams(
        algebra=env.get_and_update_env(args, "algebra", None, str),
        max_rank=env.get_and_update_env(args, "max_rank", DEFAULT_MAX_RANK, int),
    )


def process_kt_args(args) -> KTParams:
    return KTParams(
        **_algebra_fields(args),
        colour=env.get_and_update_env(args, "colour", [], parse_colours),
        k_u1=env.get_and_update_env(args, "k_u1", [], parse_vector_list),
        extra_u1=env.get_and_update_env(args, "extra_u1", 0, int),
        seed_lambda=env.get_and_update_env(args, "seed_lambda", None, parse_rational_list),
        exam=env.get_and_update_env(args, "exam", None, int),
    )


def process_hkt_args(args) -> HKTParams:
    return HKTParams(**_hkt_fields(args))


def process_qkt_args(args) -> QKTParams:
    return QKTParams(**_hkt_fields(args), search_cap=env.get_and_update_env(args, "search_cap", DEFAULT_SEARCH_CAP, int))


def process_verify_args(args) -> AlgebraParams:
    return AlgebraParams(**_algebra_fields(args))


def process_table_args(args) -> TableParams:
    return TableParams(
        algebra=env.get_and_update_env(args, "algebra", None, str),
        max_rank=env.get_and_update_env(args, "max_rank", DEFAULT_MAX_RANK, int),
        search_cap=env.get_and_update_env(args, "search_cap", DEFAULT_SEARCH_CAP, int),
    )


COMMANDS: dict[str, tuple[Callable, Callable]] = {
    "catalog": (process_catalog_args, catalog),
    "decompose-kt": (process_kt_args, decompose_kt),
    "decompose-hkt": (process_hkt_args, decompose_hkt),
    "verify": (process_verify_args, verify),
    "table2": (process_table_args, table2),
    "table3": (process_table_args, table3),
    "qkt": (process_qkt_args, qkt),
}


def dispatch(args: argparse.Namespace) -> CommandResult:
    process, command = COMMANDS[args.command]
    params = process(args)
    logger.debug("%s %s", args.command, params.model_dump())
    return command(params)
