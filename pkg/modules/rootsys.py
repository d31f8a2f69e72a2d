"""
Root systems of the simple Lie algebras A_r .. G_2 in rational Euclidean
coordinates, Dynkin and extended Dynkin diagrams, diagram automorphisms and
colourings.

Nodes are numbered 1..rank in Bourbaki order; the extended node is 0.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional

import networkx as nx

from modules.utils import linalg
from modules.utils.linalg import Vector

logger = logging.getLogger(__name__)


class InvalidRank(ValueError):
    pass


class UnknownAlgebra(ValueError):
    pass


class NotARoot(ValueError):
    pass


class InvalidColouring(ValueError):
    pass


FAMILIES = "ABCDEFG"

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class AlgebraType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnknownAlgebra(f"unknown family {self.family!r}")
        if self.family in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[self.family]:
                raise InvalidRank(f"{self.family}{self.rank}: rank must be one of {_FIXED_RANKS[self.family]}")
        elif self.rank < _MIN_RANK[self.family]:
            raise InvalidRank(f"{self.family}{self.rank}: rank must be >= {_MIN_RANK[self.family]}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def root_count(self) -> int:
        r = self.rank
        return {
            "A": r * (r + 1),
            "B": 2 * r * r,
            "C": 2 * r * r,
            "D": 2 * r * (r - 1),
            "E": {6: 72, 7: 126, 8: 240}.get(r, 0),
            "F": 48,
            "G": 12,
        }[self.family]

    @property
    def dimension(self) -> int:
        return self.rank + self.root_count

    def __str__(self) -> str:
        return self.name


_NAME_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def parse_algebra(text: str) -> AlgebraType:
    m = _NAME_RE.match(text or "")
    if not m:
        raise UnknownAlgebra(f"cannot parse algebra name {text!r}")
    return AlgebraType(m.group(1).upper(), int(m.group(2)))


# low-rank coincidences; names on the left are reported as the right
ISOMORPHIC_NAMES = {"B1": "A1", "C1": "A1", "C2": "B2", "D3": "A3", "D2": "2A1"}


def canonical_name(name: str) -> str:
    return ISOMORPHIC_NAMES.get(name, name)


def _eps(n: int, entries: dict[int, Fraction]) -> Vector:
    return tuple(Fraction(entries.get(i, 0)) for i in range(n))


def _e8_simple_roots() -> list[Vector]:
    h = Fraction(1, 2)
    roots = [
        (h, -h, -h, -h, -h, -h, -h, h),
        _eps(8, {0: 1, 1: 1}),
    ]
    for i in range(6):
        roots.append(_eps(8, {i + 1: 1, i: -1}))
    return [linalg.vec(r) for r in roots]


def simple_root_vectors(algebra: AlgebraType) -> list[Vector]:
    f, r = algebra.family, algebra.rank
    if f == "A":
        return [_eps(r + 1, {i: 1, i + 1: -1}) for i in range(r)]
    if f in "BCD":
        out = [_eps(r, {i: 1, i + 1: -1}) for i in range(r - 1)]
        if f == "B":
            out.append(_eps(r, {r - 1: 1}))
        elif f == "C":
            out.append(_eps(r, {r - 1: 2}))
        else:
            out.append(_eps(r, {r - 2: 1, r - 1: 1}))
        return out
    if f == "G":
        return [_eps(3, {0: 1, 1: -1}), _eps(3, {0: -2, 1: 1, 2: 1})]
    if f == "F":
        h = Fraction(1, 2)
        return [
            _eps(4, {1: 1, 2: -1}),
            _eps(4, {2: 1, 3: -1}),
            _eps(4, {3: 1}),
            linalg.vec((h, -h, -h, -h)),
        ]
    return _e8_simple_roots()[:r]


@dataclass(frozen=True)
class Root:
    simple_coeffs: tuple[int, ...]
    ambient: Vector = field(compare=False, repr=False)

    @property
    def height(self) -> int:
        return sum(self.simple_coeffs)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    @property
    def norm2(self) -> Fraction:
        return linalg.dot(self.ambient, self.ambient)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.simple_coeffs), tuple(-a for a in self.ambient))

    def sort_key(self):
        return (self.height, self.simple_coeffs)

    def label(self) -> str:
        return "(" + ",".join(str(c) for c in self.simple_coeffs) + ")"


def root_dot(a: Root, b: Root) -> Fraction:
    return linalg.dot(a.ambient, b.ambient)


def coroot_pairing(beta: Root, alpha: Root) -> Fraction:
    """<beta, alpha^vee> = 2 beta.alpha / alpha.alpha."""
    return 2 * root_dot(beta, alpha) / alpha.norm2


class RootSystem:
    def __init__(self, algebra: AlgebraType):
        self.algebra = algebra
        vectors = simple_root_vectors(algebra)
        r = algebra.rank
        self.simple_roots: tuple[Root, ...] = tuple(
            Root(tuple(1 if j == i else 0 for j in range(r)), vectors[i]) for i in range(r)
        )
        self._cartan = tuple(
            tuple(int(2 * linalg.dot(vectors[i], vectors[j]) / linalg.dot(vectors[i], vectors[i])) for j in range(r))
            for i in range(r)
        )
        coeffs = self._close_under_reflections()
        roots = [Root(c, linalg.combine(c, vectors)) for c in coeffs]
        self.all_roots: tuple[Root, ...] = tuple(sorted(roots, key=Root.sort_key))
        self.positive_roots: tuple[Root, ...] = tuple(a for a in self.all_roots if a.is_positive)
        self._by_coeffs = {a.simple_coeffs: a for a in self.all_roots}
        self.highest_root: Root = max(self.positive_roots, key=Root.sort_key)
        logger.debug("built %s with %d roots", algebra.name, len(self.all_roots))

    def _close_under_reflections(self) -> set[tuple[int, ...]]:
        r = self.algebra.rank
        A = self._cartan
        seen = {tuple(1 if j == i else 0 for j in range(r)) for i in range(r)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(r):
                    pairing = sum(c[j] * A[i][j] for j in range(r))
                    if pairing == 0:
                        continue
                    image = tuple(c[j] - (pairing if j == i else 0) for j in range(r))
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return seen

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0].ambient)

    @property
    def dimension(self) -> int:
        return self.rank + len(self.all_roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.algebra.name})"

    def __contains__(self, item) -> bool:
        if isinstance(item, Root):
            return item.simple_coeffs in self._by_coeffs
        return tuple(item) in self._by_coeffs

    def root(self, coeffs: Iterable[int]) -> Root:
        key = tuple(int(c) for c in coeffs)
        try:
            return self._by_coeffs[key]
        except KeyError:
            raise NotARoot(f"{key} is not a root of {self.algebra.name}") from None

    def get(self, coeffs: Iterable[int]) -> Optional[Root]:
        return self._by_coeffs.get(tuple(coeffs))

    def add(self, a: Root, b: Root) -> Optional[Root]:
        return self._by_coeffs.get(tuple(x + y for x, y in zip(a.simple_coeffs, b.simple_coeffs)))

    def sub(self, a: Root, b: Root) -> Optional[Root]:
        return self._by_coeffs.get(tuple(x - y for x, y in zip(a.simple_coeffs, b.simple_coeffs)))

    def positive_of(self, a: Root) -> Root:
        return a if a.is_positive else -a

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {a: i for i, a in enumerate(self.positive_roots)}

    def coroot(self, a: Root) -> Vector:
        return linalg.scale(Fraction(2) / a.norm2, a.ambient)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "rank": self.rank,
            "simple_roots": [[str(x) for x in a.ambient] for a in self.simple_roots],
            "roots": [list(a.simple_coeffs) for a in self.all_roots],
            "highest_root": list(self.highest_root.simple_coeffs),
        }


@lru_cache(maxsize=64)
def build_root_system(algebra: AlgebraType) -> RootSystem:
    rs = RootSystem(algebra)
    if len(rs.all_roots) != algebra.root_count:
        raise AssertionError(f"{algebra.name}: generated {len(rs.all_roots)} roots, expected {algebra.root_count}")
    return rs


def cartan_matrix(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    return rs._cartan


@dataclass(frozen=True)
class DynkinDiagram:
    algebra: AlgebraType
    nodes: tuple[int, ...]
    # (i, j) with i < j -> (multiplicity, node the arrow points to or None)
    edges: dict[tuple[int, int], tuple[int, Optional[int]]]
    norms: dict[int, Fraction]
    extended_node: Optional[int] = None

    def neighbours(self, node: int) -> list[int]:
        return sorted(j if i == node else i for (i, j) in self.edges if node in (i, j))

    def edge_list(self) -> list[tuple[int, int, int, Optional[int]]]:
        return [(i, j, m, arrow) for (i, j), (m, arrow) in sorted(self.edges.items())]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for n in self.nodes:
            g.add_node(n, norm=self.norms[n])
        for (i, j), (m, _) in self.edges.items():
            g.add_edge(i, j, multiplicity=m)
        return g

    def without_extended(self) -> "DynkinDiagram":
        if self.extended_node is None:
            return self
        x = self.extended_node
        return DynkinDiagram(
            self.algebra,
            tuple(n for n in self.nodes if n != x),
            {e: v for e, v in self.edges.items() if x not in e},
            {n: v for n, v in self.norms.items() if n != x},
        )

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "nodes": list(self.nodes),
            "extended_node": self.extended_node,
            "edges": [list(e) for e in self.edge_list()],
        }


def _diagram(algebra: AlgebraType, labelled: list[tuple[int, Root]], extended: Optional[int]) -> DynkinDiagram:
    edges = {}
    for x, (i, a) in enumerate(labelled):
        for j, b in labelled[x + 1 :]:
            aij = coroot_pairing(b, a)
            aji = coroot_pairing(a, b)
            mult = int(aij * aji)
            if mult == 0:
                continue
            arrow = None
            if a.norm2 != b.norm2:
                arrow = i if a.norm2 < b.norm2 else j
            key = (min(i, j), max(i, j))
            edges[key] = (mult, arrow)
    norms = {i: a.norm2 for i, a in labelled}
    return DynkinDiagram(algebra, tuple(sorted(i for i, _ in labelled)), edges, norms, extended)


def plain_diagram(rs: RootSystem) -> DynkinDiagram:
    return _diagram(rs.algebra, [(i + 1, a) for i, a in enumerate(rs.simple_roots)], None)


def extended_diagram(rs: RootSystem) -> DynkinDiagram:
    labelled = [(0, -rs.highest_root)] + [(i + 1, a) for i, a in enumerate(rs.simple_roots)]
    return _diagram(rs.algebra, labelled, 0)


def diagram_automorphisms(d: DynkinDiagram) -> list[tuple[int, ...]]:
    """
    All node permutations preserving bonds, multiplicities and arrows.

    A permutation is returned as the tuple of images of d.nodes in order.
    """
    g = d.graph()
    matcher = nx.algorithms.isomorphism.GraphMatcher(
        g,
        g,
        node_match=lambda x, y: x["norm"] == y["norm"],
        edge_match=lambda x, y: x["multiplicity"] == y["multiplicity"],
    )
    perms = {tuple(iso[n] for n in d.nodes) for iso in matcher.isomorphisms_iter()}
    return sorted(perms)


def root_string(rs: RootSystem, alpha: Root, beta: Root) -> tuple[int, int]:
    for x in (alpha, beta):
        if x not in rs:
            raise NotARoot(f"{x.simple_coeffs} is not a root of {rs.algebra.name}")
    if alpha.simple_coeffs == beta.simple_coeffs or alpha.simple_coeffs == (-beta).simple_coeffs:
        raise ValueError("root string needs beta != +-alpha")

    def steps(sign: int) -> int:
        n = 0
        while rs.get(tuple(b + sign * (n + 1) * a for a, b in zip(alpha.simple_coeffs, beta.simple_coeffs))):
            n += 1
        return n

    return steps(-1), steps(+1)


@dataclass(frozen=True)
class Colouring:
    coloured: frozenset[int]

    def to_json(self) -> list[int]:
        return sorted(self.coloured)


def colouring_from_indices(rs: RootSystem, indices: Iterable[int]) -> Colouring:
    idx = frozenset(int(i) for i in indices)
    bad = sorted(i for i in idx if not 1 <= i <= rs.rank)
    if bad:
        raise InvalidColouring(f"nodes {bad} not in the {rs.algebra.name} diagram (1..{rs.rank})")
    return Colouring(idx)


def node_numbering(rs: RootSystem) -> list[dict]:
    return [
        {
            "node": i + 1,
            "ambient": [str(x) for x in a.ambient],
            "norm2": str(a.norm2),
        }
        for i, a in enumerate(rs.simple_roots)
    ]


# --- sub-systems -------------------------------------------------------------


@dataclass(frozen=True)
class SubSystem:
    """A closed set of positive roots of one ambient RootSystem, with its simple roots."""

    rs: RootSystem
    positive_roots: tuple[Root, ...]

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        pos = set(self.positive_roots)
        out = []
        for a in self.positive_roots:
            decomposable = any(
                (d := self.rs.sub(a, b)) is not None and d in pos and d != b for b in self.positive_roots if b != a
            )
            if not decomposable:
                out.append(a)
        return tuple(sorted(out, key=Root.sort_key))

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=Root.sort_key)

    def components(self) -> list["SubSystem"]:
        # irreducible components are the connected pieces of the non-orthogonality graph
        g = nx.Graph()
        pos = self.positive_roots
        g.add_nodes_from(range(len(pos)))
        for i, a in enumerate(pos):
            for j in range(i + 1, len(pos)):
                if root_dot(a, pos[j]) != 0:
                    g.add_edge(i, j)
        comps = [SubSystem(self.rs, tuple(pos[i] for i in sorted(nodes))) for nodes in nx.connected_components(g)]
        return sorted(comps, key=lambda c: c.positive_roots[0].sort_key())

    @cached_property
    def type_name(self) -> str:
        if not self.positive_roots:
            return "0"
        comps = self.components()
        if len(comps) > 1:
            return join_type_names(classify_component(c) for c in comps)
        return classify_component(self)


_TYPE_TOKEN = re.compile(r"^(\d*)([A-G]\d+)$")


def join_type_names(names: Iterable[str]) -> str:
    """'A1', 'D4', 'A1' -> 'D4+2A1': larger rank first, repeated summands counted."""
    counts: dict[str, int] = {}
    for n in names:
        for part in n.split("+"):
            part = part.strip()
            if not part or part == "0":
                continue
            m = _TYPE_TOKEN.match(part)
            if not m:
                raise UnknownAlgebra(f"cannot parse type summand {part!r}")
            name = canonical_name(m.group(2))
            mult = int(m.group(1) or 1)
            for sub in name.split("+"):
                sm = _TYPE_TOKEN.match(sub)
                counts[sm.group(2)] = counts.get(sm.group(2), 0) + mult * int(sm.group(1) or 1)
    if not counts:
        return "0"
    keys = sorted(counts, key=lambda p: (-int(p[1:]), p))
    return "+".join(k if counts[k] == 1 else f"{counts[k]}{k}" for k in keys)


def classify_component(c: SubSystem) -> str:
    """Cartan type of an irreducible sub-system from rank, root count and short-root count."""
    n = c.rank
    count = 2 * len(c.positive_roots)
    norms = [a.norm2 for a in c.positive_roots]
    long_norm = max(norms)
    short = 2 * sum(1 for x in norms if x != long_norm)
    if n == 1:
        return "A1"
    if short == 0:
        if count == n * (n + 1):
            return f"A{n}"
        if n >= 4 and count == 2 * n * (n - 1):
            return f"D{n}"
        if n in (6, 7, 8) and count == AlgebraType("E", n).root_count:
            return f"E{n}"
        raise AssertionError(f"unclassified simply-laced sub-system of rank {n} with {count} roots")
    if n == 2 and count == 12:
        return "G2"
    if n == 4 and count == 48:
        return "F4"
    if count == 2 * n * n:
        if n == 2:
            return "B2"
        return f"B{n}" if short == 2 * n else f"C{n}"
    raise AssertionError(f"unclassified sub-system of rank {n} with {count} roots")


def sub_system(rs: RootSystem, roots: Iterable[Root]) -> SubSystem:
    pos = {rs.positive_of(a) for a in roots}
    return SubSystem(rs, tuple(sorted(pos, key=Root.sort_key)))


def roots_spanned_by(rs: RootSystem, simple_indices: Iterable[int]) -> SubSystem:
    """Positive roots supported on the given (1-based) simple roots."""
    idx = {i - 1 for i in simple_indices}
    members = [a for a in rs.positive_roots if all(c == 0 or i in idx for i, c in enumerate(a.simple_coeffs))]
    return SubSystem(rs, tuple(members))


def classify_roots(rs: RootSystem, roots: Iterable[Root]) -> str:
    """Cartan type of the closed sub-system spanned by roots, e.g. 'D4+A1'."""
    return sub_system(rs, roots).type_name
