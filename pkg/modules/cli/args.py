import argparse

from modules.cli.params import parse_colours, parse_rational_list, parse_vector_list

COMMANDS = ("catalog", "decompose-kt", "decompose-hkt", "verify", "table2", "table3", "qkt")


def setup_common_args(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true", default=None, help="Emit JSON instead of text tables")
    parser.add_argument("--max-rank", dest="max_rank", type=int, default=None, help="Rank cap per simple factor (default 8)")
    parser.add_argument(
        "--log-level",
        dest="log_level",
        type=str.upper,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (stderr)",
    )


def setup_algebra_args(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument(
        "--algebra",
        type=str,
        required=required,
        default=None,
        help="Simple or reductive algebra, e.g. E8, A4, A1xA1, A2xU1^2",
    )
    parser.add_argument(
        "--normalization",
        type=str.lower,
        default=None,
        choices=["standard", "killing"],
        help="Invariant metric on each simple ideal",
    )


def setup_kt_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--colour",
        type=parse_colours,
        default=None,
        help="Coloured nodes (node numbering as printed by catalog); ideals separated by ';'",
    )
    parser.add_argument(
        "--k-u1",
        dest="k_u1",
        type=parse_vector_list,
        default=None,
        help="u(1) directions added to k, over H_alpha_i and U_a, vectors separated by ';'",
    )
    parser.add_argument("--extra-u1", dest="extra_u1", type=int, default=None, help="Central u(1)'s appended to g")
    parser.add_argument(
        "--seed-lambda",
        dest="seed_lambda",
        type=parse_rational_list,
        default=None,
        help="Regular element over H_alpha_i and U_a selecting the positivity assignment",
    )
    parser.add_argument("--exam", type=int, default=None, help="E8 variant a in 0..3 (k gets a u(1)'s)")


def setup_hkt_args(parser: argparse.ArgumentParser):
    parser.add_argument("--stop-level", dest="stop_level", type=int, default=None, help="Number of levels to peel")
    parser.add_argument("--k-u1", dest="k_u1", type=int, default=None, help="Abelian directions absorbed into k")
    parser.add_argument("--extra-u1", dest="extra_u1", type=int, default=None, help="u(1)'s appended to m")
    parser.add_argument(
        "--peel-order",
        dest="peel_order",
        type=str.lower,
        default=None,
        choices=["a1-first", "a1-last"],
        help="Which component a level peels when several are left",
    )


def setup_qkt_args(parser: argparse.ArgumentParser):
    setup_hkt_args(parser)
    setup_search_args(parser)


def setup_search_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--search-cap",
        dest="search_cap",
        type=int,
        default=None,
        help="Height cap of the rational weight search for U",
    )


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="launch.py",
        description="Exact Lie-algebra computations for homogeneous KT, HKT and QKT spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="Simple algebras, node numbering and diagrams")
    setup_algebra_args(p, required=False)
    setup_common_args(p)

    p = sub.add_parser("decompose-kt", help="Coset from a colouring with its KT structure")
    setup_algebra_args(p)
    setup_kt_args(p)
    setup_common_args(p)

    p = sub.add_parser("decompose-hkt", help="Level decomposition and hypercomplex structure")
    setup_algebra_args(p)
    setup_hkt_args(p)
    setup_common_args(p)

    p = sub.add_parser("verify", help="Structure constants, Jacobi and metric invariance")
    setup_algebra_args(p)
    setup_common_args(p)

    p = sub.add_parser("table2", help="HKT cosets of simple algebras against the closed forms")
    setup_algebra_args(p, required=False)
    setup_common_args(p)

    p = sub.add_parser("table3", help="Eight-dimensional HKT cosets and their U(2) quotients")
    setup_search_args(p)
    setup_common_args(p)

    p = sub.add_parser("qkt", help="U(2) quotient of an HKT coset")
    setup_algebra_args(p)
    setup_qkt_args(p)
    setup_common_args(p)
    return parser
