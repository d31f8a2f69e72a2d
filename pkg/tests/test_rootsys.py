from fractions import Fraction
from functools import cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.rootsys import (
    AlgebraType,
    InvalidColouring,
    InvalidRank,
    UnknownAlgebra,
    build_root_system,
    canonical_name,
    cartan_matrix,
    classify_roots,
    colouring_from_indices,
    coroot_pairing,
    diagram_automorphisms,
    extended_diagram,
    join_type_names,
    parse_algebra,
    plain_diagram,
    roots_spanned_by,
)


@pytest.mark.rootsys
@pytest.mark.parametrize(
    "name, positive, dimension",
    [
        ("A1", 1, 3),
        ("A4", 10, 24),
        ("B3", 9, 21),
        ("C3", 9, 21),
        ("D4", 12, 28),
        ("G2", 6, 14),
        ("F4", 24, 52),
        ("E6", 36, 78),
        ("E7", 63, 133),
        ("E8", 120, 248),
    ],
)
def test_root_counts(root_system, name, positive, dimension):
    rs = root_system(name)
    assert len(rs.positive_roots) == positive
    assert len(rs.all_roots) == 2 * positive
    assert rs.dimension == dimension
    assert parse_algebra(name).dimension == dimension


@pytest.mark.rootsys
@pytest.mark.parametrize(
    "name, highest",
    [
        ("A4", (1, 1, 1, 1)),
        ("B3", (1, 2, 2)),
        ("C3", (2, 2, 1)),
        ("D4", (1, 2, 1, 1)),
        ("G2", (3, 2)),
        ("F4", (2, 3, 4, 2)),
        ("E8", (2, 3, 4, 6, 5, 4, 3, 2)),
    ],
)
def test_highest_root(root_system, name, highest):
    assert root_system(name).highest_root.simple_coeffs == highest


@pytest.mark.rootsys
def test_parse_and_canonical_names():
    assert parse_algebra("e_8").name == "E8"
    assert canonical_name("C2") == "B2"
    assert canonical_name("D3") == "A3"
    assert canonical_name("B1") == "A1"
    with pytest.raises(InvalidRank):
        AlgebraType("E", 5)
    with pytest.raises(UnknownAlgebra):
        parse_algebra("X9")


@pytest.mark.rootsys
def test_join_type_names():
    assert join_type_names(["A1", "D4", "A1"]) == "D4+2A1"
    assert join_type_names(["C1", "A2"]) == "A2+A1"
    assert join_type_names([]) == "0"
    assert join_type_names(["D2"]) == "2A1"


@pytest.mark.rootsys
def test_cartan_matrix(root_system):
    assert cartan_matrix(root_system("A2")) == ((2, -1), (-1, 2))
    g2 = cartan_matrix(root_system("G2"))
    assert sorted((g2[0][1], g2[1][0])) == [-3, -1]


@pytest.mark.rootsys
@pytest.mark.parametrize("name, count", [("A1", 1), ("A3", 2), ("B3", 1), ("D4", 6), ("E6", 2), ("E7", 1)])
def test_diagram_automorphisms(root_system, name, count):
    assert len(diagram_automorphisms(plain_diagram(root_system(name)))) == count


@pytest.mark.rootsys
def test_extended_a1_bond(root_system):
    d = extended_diagram(root_system("A1"))
    assert d.edge_list() == [(0, 1, 4, None)]


@pytest.mark.rootsys
def test_e8_colouring_gives_d4_a1(root_system):
    rs = root_system("E8")
    sub = roots_spanned_by(rs, colouring_from_indices(rs, (2, 3, 4, 5, 8)).coloured)
    assert sub.type_name == "D4+A1"
    assert sub.dimension == 31


@pytest.mark.rootsys
def test_classify_roots(root_system):
    rs = root_system("A4")
    psi = rs.highest_root
    perp = [a for a in rs.positive_roots if coroot_pairing(a, psi) == 0]
    assert classify_roots(rs, perp) == "A2"


@pytest.mark.rootsys
def test_bad_colouring(root_system):
    with pytest.raises(InvalidColouring):
        colouring_from_indices(root_system("A2"), (3,))


_cached_system = cache(lambda name: build_root_system(parse_algebra(name)))


@pytest.mark.rootsys
@settings(max_examples=50)
@given(st.sampled_from(["B3", "C3", "G2", "F4"]), st.data())
def test_coroot_pairings_are_integers(name, data):
    rs = _cached_system(name)
    a = data.draw(st.sampled_from(rs.all_roots))
    b = data.draw(st.sampled_from(rs.all_roots))
    p = coroot_pairing(a, b)
    assert Fraction(p).denominator == 1
    assert abs(p) <= 3
