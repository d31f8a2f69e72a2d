from typing import IO, Optional

from rich.console import Console
from rich.table import Table

from modules.cli.commands import CommandResult

WIDTH = 120


def make_console(file: Optional[IO[str]] = None) -> Console:
    # fixed width, no colour: identical invocations print identical text
    return Console(file=file, width=WIDTH, color_system=None, highlight=False, soft_wrap=False)


def _table(title: str, columns: list[str], rows: list[list]) -> Table:
    table = Table(title=title, header_style=None, title_justify="left")
    for column in columns:
        table.add_column(column, justify="left")
    for row in rows:
        table.add_row(*map(str, row))
    return table


def _fmt_list(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def checks_table(report: dict) -> Table:
    rows = [
        [c["name"], "ok" if c["passed"] else "FAIL", c["checked"], "" if c["witness"] is None else c["witness"]]
        for c in report["checks"]
    ]
    title = f"{report['subject']}: {'pass' if report['passed'] else 'FAIL'}"
    return _table(title, ["check", "result", "cases", "witness"], rows)


def render_catalog(console: Console, data: list[dict]):
    rows = [[e["name"], e["rank"], e["dimension"], e["positive_roots"], _fmt_list(e["highest_root"]), e["automorphisms"]] for e in data]
    console.print(_table("simple algebras", ["type", "rank", "dim", "positive roots", "highest root", "|Aut|"], rows))
    if len(data) == 1:
        nodes = [[n["node"], _fmt_list(n["ambient"]), n["norm2"]] for n in data[0]["nodes"]]
        console.print(_table(f"{data[0]['name']} node numbering", ["node", "simple root", "|alpha|^2"], nodes))


def render_kt(console: Console, data: dict):
    c = data["coset"]
    rows = [[c["g"], c["k"], c["dim_g"], c["dim_k"], c["dim_m"], c["extra_u1"]]]
    console.print(_table("coset", ["g", "k", "dim g", "dim k", "dim m", "extra u(1)"], rows))
    console.print(_table("h_1 (over H_alpha_i, U_a)", ["#", "coefficients"], [[i, _fmt_list(v)] for i, v in enumerate(data["h_one"])]))
    console.print(checks_table(data["report"]))


def render_hkt(console: Console, data: dict):
    levels = data["levels"]
    rows = [[lv["index"], lv["ideal"], lv["peeled"], _fmt_list(lv["psi"]), len(lv["f"]), lv["b"]] for lv in levels["levels"]]
    console.print(_table(f"levels of {levels['g']}", ["level", "ideal", "peeled", "psi", "|f|", "b"], rows))
    console.print(f"k = {data['k']}, required extra u(1) = {data['required_extra_u1']}")
    console.print(checks_table(data["cond"]))
    if data["hkt"] is not None:
        console.print(checks_table(data["hkt"]["report"]))
    elif "hkt_skipped" in data:
        console.print(f"hypercomplex structure skipped: {data['hkt_skipped']}")


def render_verify(console: Console, data: dict):
    console.print(checks_table(data))


def render_table2(console: Console, data: list[dict]):
    for entry in data:
        rows = [[r["k"], r["m"], r["d"], r["levels"]] for r in entry["rows"]]
        console.print(_table(f"{entry['g']}", ["K", "m", "d", "levels"], rows))
        cmp = entry["comparison"]
        for fix in cmp["info"].get("corrections", []):
            console.print(f"  printed m = {fix['printed_m']} for K = {fix['k']}, computed m = {fix['m']}")
        console.print(checks_table(cmp))


def render_table3(console: Console, data: list[dict]):
    rows = [[r["hkt"], r["qkt"], r["comment"]] for r in data]
    console.print(_table("eight-dimensional HKT cosets", ["HKT", "QKT", "comment"], rows))


def render_qkt(console: Console, data: dict):
    q = data["quotient"]
    rows = [[q["g"], q["k"], q["dim_hkt"], q["dim"], q["levels"], _fmt_list(q["embedding"]["U_direction"])]]
    console.print(_table("quotient by U(2)", ["g", "k", "dim HKT", "dim QKT", "levels", "U direction"], rows))
    for key in ("report", "embedding", "dh"):
        console.print(checks_table(data[key]))
    info = data["dh"]["info"]
    console.print(", ".join(f"{k} = {v}" for k, v in sorted(info.items())))


RENDERERS = {
    "catalog": render_catalog,
    "decompose-kt": render_kt,
    "decompose-hkt": render_hkt,
    "verify": render_verify,
    "table2": render_table2,
    "table3": render_table3,
    "qkt": render_qkt,
}


def render(result: CommandResult, console: Console):
    RENDERERS[result.command](console, result.data)
