"""
Chevalley structure constants, the compact real form and invariant metrics.

Elements of a reductive algebra are sparse dicts. Keys are

    ("E+", ideal, coeffs)  compact step operator E+_alpha, alpha positive
    ("E-", ideal, coeffs)  compact step operator E-_alpha, alpha positive
    ("h", position)        Cartan coordinate in the concatenated space

The Cartan space concatenates the Euclidean coordinates of every simple ideal
followed by one coordinate per u(1). A Cartan element with coordinate vector
v acts as [H_v, E+_b] = (v.b) E-_b and [H_v, E-_b] = -(v.b) E+_b, so the simple
generator H_{alpha_i} is the coroot 2 alpha_i / alpha_i.alpha_i.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence, Union

from modules.rootsys import (
    AlgebraType,
    Root,
    RootSystem,
    build_root_system,
    parse_algebra,
    root_dot,
    root_string,
)
from modules.surd import SurdScalar
from modules.utils import linalg
from modules.utils.linalg import Vector
from modules.utils.report import Report, Scan

logger = logging.getLogger(__name__)

Coeff = Union[Fraction, SurdScalar, int]
Key = tuple
Element = dict


class NonPositiveScale(ValueError):
    pass


# --- structure constants ----------------------------------------------------


class StructureConstantTable:
    """
    N(alpha, beta) for every ordered pair of roots whose sum is a root.

    Signs: N = +(p+1) on extraspecial pairs, everything else forced by the
    structure-constant identities.
    """

    def __init__(self, rs: RootSystem, entries: Optional[dict] = None):
        self.rs = rs
        self.algebra: AlgebraType = rs.algebra
        if entries is None:
            entries = self._compute()
        self._n: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = entries

    def _compute(self) -> dict:
        rs = self.rs
        order = {a: i for i, a in enumerate(rs.positive_roots)}
        pos: dict = {}

        def lookup(x: Root, y: Root) -> int:
            # only reached for pairs whose sum has smaller height than the current level
            s = rs.add(x, y)
            if s is None:
                return 0
            if x.is_positive and y.is_positive:
                return pos[(x.simple_coeffs, y.simple_coeffs)]
            if not x.is_positive and not y.is_positive:
                return -lookup(-x, -y)
            z = -s
            # N(x,y)/|z|^2 = N(y,z)/|x|^2 = N(z,x)/|y|^2
            if y.is_positive == z.is_positive:
                val = Fraction(z.norm2) / x.norm2 * lookup(y, z)
            else:
                val = Fraction(z.norm2) / y.norm2 * lookup(z, x)
            return int(val)

        for xi in rs.positive_roots:
            pairs = []
            for g in rs.positive_roots:
                d = rs.sub(xi, g)
                if d is not None and d.is_positive and order[g] < order[d]:
                    pairs.append((g, d))
            if not pairs:
                continue
            pairs.sort(key=lambda p: order[p[0]])
            alpha, beta = pairs[0]
            p, _ = root_string(rs, alpha, beta)
            n_ab = p + 1
            pos[(alpha.simple_coeffs, beta.simple_coeffs)] = n_ab
            pos[(beta.simple_coeffs, alpha.simple_coeffs)] = -n_ab
            for gamma, delta in pairs[1:]:
                total = Fraction(0)
                bg = rs.sub(beta, gamma)
                if bg is not None:
                    total += Fraction(lookup(beta, -gamma) * lookup(alpha, -delta)) / bg.norm2
                ag = rs.sub(alpha, gamma)
                if ag is not None:
                    total += Fraction(lookup(-gamma, alpha) * lookup(beta, -delta)) / ag.norm2
                val = xi.norm2 / n_ab * total
                if val.denominator != 1 or val == 0:
                    raise AssertionError(f"non-integral N for {gamma.simple_coeffs},{delta.simple_coeffs}: {val}")
                pos[(gamma.simple_coeffs, delta.simple_coeffs)] = int(val)
                pos[(delta.simple_coeffs, gamma.simple_coeffs)] = -int(val)

        entries = {}
        for x in rs.all_roots:
            for y in rs.all_roots:
                if rs.add(x, y) is not None:
                    entries[(x.simple_coeffs, y.simple_coeffs)] = lookup(x, y)
        logger.debug("%s: %d structure constants", rs.algebra.name, len(entries))
        return entries

    def N(self, alpha: Root, beta: Root) -> int:
        return self._n.get((alpha.simple_coeffs, beta.simple_coeffs), 0)

    def items(self):
        return self._n.items()

    def __len__(self) -> int:
        return len(self._n)

    def max_abs(self) -> int:
        return max((abs(v) for v in self._n.values()), default=0)

    def mutated(self, alpha: Root, beta: Root) -> "StructureConstantTable":
        """Copy with the single entry N(alpha, beta) negated; partner entries are left stale."""
        entries = dict(self._n)
        key = (alpha.simple_coeffs, beta.simple_coeffs)
        if key not in entries:
            raise KeyError(f"no structure constant for {key}")
        entries[key] = -entries[key]
        return StructureConstantTable(self.rs, entries)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "entries": [{"alpha": list(a), "beta": list(b), "N": n} for (a, b), n in sorted(self._n.items())],
        }


@lru_cache(maxsize=32)
def structure_constants(rs: RootSystem) -> StructureConstantTable:
    return StructureConstantTable(rs)


def verify_ident(t: StructureConstantTable) -> Report:
    """Antisymmetry, sign reversal, cyclic (norm-weighted) identity and |N| = p+1."""
    rs = t.rs
    anti, neg, cyc, mag = Scan("antisymmetry"), Scan("negation"), Scan("cyclic"), Scan("string_length")
    for (a, b), n in t.items():
        x, y = rs.root(a), rs.root(b)
        z = -rs.add(x, y)
        anti.ok(t.N(y, x) == -n, (a, b))
        neg.ok(t.N(-x, -y) == -n, (a, b))
        # N(x,y)/|z|^2 = N(y,z)/|x|^2 = N(z,x)/|y|^2
        r0 = Fraction(n) / z.norm2
        cyc.ok(r0 == Fraction(t.N(y, z)) / x.norm2 and r0 == Fraction(t.N(z, x)) / y.norm2, (a, b))
        p, _ = root_string(rs, x, y)
        mag.ok(abs(n) == p + 1, (a, b), f"|N|={abs(n)} p={p}")
    report = Report(subject=f"ident {rs.algebra.name}")
    for s in (anti, neg, cyc, mag):
        report.add(s.result())
    return report


# --- the complex Chevalley algebra (Jacobi oracle) -----------------------------


def coroot_coefficients(rs: RootSystem, alpha: Root) -> tuple[Fraction, ...]:
    """h_alpha = sum_i c_i h_{alpha_i} with integer c_i."""
    return tuple(
        Fraction(c) * rs.simple_roots[i].norm2 / alpha.norm2 for i, c in enumerate(alpha.simple_coeffs)
    )


def complex_bracket(t: StructureConstantTable, x: Key, y: Key) -> dict:
    """
    Bracket of Chevalley basis elements ("e", coeffs) and ("h", i).

    [h_i, e_b] = <b, alpha_i^vee> e_b, [e_a, e_-a] = h_a, [e_a, e_b] = N(a,b) e_{a+b}.
    """
    rs = t.rs
    if x[0] == "h" and y[0] == "h":
        return {}
    if x[0] == "h":
        b = rs.root(y[1])
        c = 2 * root_dot(b, rs.simple_roots[x[1]]) / rs.simple_roots[x[1]].norm2
        return {y: c} if c else {}
    if y[0] == "h":
        return {k: -v for k, v in complex_bracket(t, y, x).items()}
    a, b = rs.root(x[1]), rs.root(y[1])
    if a.simple_coeffs == (-b).simple_coeffs:
        return {("h", i): c for i, c in enumerate(coroot_coefficients(rs, a)) if c}
    s = rs.add(a, b)
    if s is None:
        return {}
    return {("e", s.simple_coeffs): Fraction(t.N(a, b))}


def _bracket_vec(t: StructureConstantTable, u: dict, y: Key) -> dict:
    out: dict = {}
    for k, c in u.items():
        for k2, c2 in complex_bracket(t, k, y).items():
            out[k2] = out.get(k2, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def verify_jacobi(t: StructureConstantTable) -> Report:
    """Exhaustive Jacobi scan over unordered triples of the basis {e_alpha, h_i}, both orientations."""
    rs = t.rs
    basis = [("h", i) for i in range(rs.rank)] + [("e", a.simple_coeffs) for a in rs.all_roots]
    scan = Scan("jacobi")
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = basis[i], basis[j], basis[k]
                for p, q, r in ((x, y, z), (y, x, z)):
                    total: dict = {}
                    for u, v, w in ((p, q, r), (q, r, p), (r, p, q)):
                        for key, c in _bracket_vec(t, complex_bracket(t, u, v), w).items():
                            total[key] = total.get(key, 0) + c
                    if not scan.ok(all(c == 0 for c in total.values()), [list(map(_plain, (p, q, r)))]):
                        break
    report = Report(subject=f"jacobi {rs.algebra.name}")
    report.add(scan.result())
    return report


def _plain(key: Key):
    return [key[0], list(key[1]) if isinstance(key[1], tuple) else key[1]]


# --- reductive algebras and the compact real form ---------------------------------


@dataclass(frozen=True)
class ReductiveAlgebra:
    simple_ideals: tuple[RootSystem, ...]
    abelian_dim: int = 0

    @classmethod
    def of(cls, *types: Union[AlgebraType, str], abelian_dim: int = 0) -> "ReductiveAlgebra":
        systems = tuple(build_root_system(t if isinstance(t, AlgebraType) else parse_algebra(t)) for t in types)
        return cls(systems, abelian_dim)

    def with_abelian(self, extra: int) -> "ReductiveAlgebra":
        return ReductiveAlgebra(self.simple_ideals, self.abelian_dim + extra)

    @property
    def dimension(self) -> int:
        return sum(rs.dimension for rs in self.simple_ideals) + self.abelian_dim

    @property
    def rank(self) -> int:
        return sum(rs.rank for rs in self.simple_ideals) + self.abelian_dim

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, pos = [], 0
        for rs in self.simple_ideals:
            out.append(pos)
            pos += rs.ambient_dim
        return tuple(out)

    @property
    def abelian_offset(self) -> int:
        return sum(rs.ambient_dim for rs in self.simple_ideals)

    @property
    def cartan_coords(self) -> int:
        return self.abelian_offset + self.abelian_dim

    @cached_property
    def tables(self) -> tuple[StructureConstantTable, ...]:
        return tuple(structure_constants(rs) for rs in self.simple_ideals)

    def name(self) -> str:
        parts = [rs.algebra.name for rs in self.simple_ideals]
        if self.abelian_dim:
            parts.append(f"u(1)^{self.abelian_dim}" if self.abelian_dim > 1 else "u(1)")
        return "+".join(parts) or "0"

    # Cartan vectors in concatenated coordinates

    def embed(self, ideal: int, v: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.cartan_coords
        off = self.offsets[ideal]
        for i, x in enumerate(v):
            out[off + i] = Fraction(x)
        return tuple(out)

    def block(self, ideal: int, v: Sequence[Fraction]) -> Vector:
        off = self.offsets[ideal]
        return tuple(v[off : off + self.simple_ideals[ideal].ambient_dim])

    def abelian_unit(self, a: int) -> Vector:
        return linalg.unit(self.cartan_coords, self.abelian_offset + a)

    def coroot_vector(self, ideal: int, alpha: Root) -> Vector:
        return self.embed(ideal, self.simple_ideals[ideal].coroot(alpha))

    def simple_cartan_basis(self) -> list[Vector]:
        """H_{alpha_i} for every ideal, then U_a."""
        out = [self.coroot_vector(i, a) for i, rs in enumerate(self.simple_ideals) for a in rs.simple_roots]
        out += [self.abelian_unit(a) for a in range(self.abelian_dim)]
        return out

    def root_value(self, ideal: int, alpha: Root, v: Sequence[Fraction]) -> Fraction:
        """alpha(H_v)."""
        return linalg.dot(self.block(ideal, v), alpha.ambient)

    def step_keys(self) -> list[Key]:
        out = []
        for i, rs in enumerate(self.simple_ideals):
            for a in rs.positive_roots:
                out.append(("E+", i, a.simple_coeffs))
                out.append(("E-", i, a.simple_coeffs))
        return out


def cartan_element(v: Sequence) -> Element:
    return {("h", i): c for i, c in enumerate(v) if c}


def cartan_part(x: Element, n: int) -> tuple:
    return tuple(x.get(("h", i), 0) for i in range(n))


def el_add(*xs: Element) -> Element:
    out: dict = {}
    for x in xs:
        for k, v in x.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def el_scale(c, x: Element) -> Element:
    if not c:
        return {}
    return {k: c * v for k, v in x.items() if v}


def _signed_step(rs: RootSystem, kind: str, ideal: int, gamma: Root) -> tuple[Key, int]:
    """E+_{-g} = E+_g and E-_{-g} = -E-_g."""
    if gamma.is_positive:
        return (kind, ideal, gamma.simple_coeffs), 1
    return (kind, ideal, (-gamma).simple_coeffs), (1 if kind == "E+" else -1)


def _step_bracket(g: ReductiveAlgebra, x: Key, y: Key) -> Element:
    if x[1] != y[1]:
        return {}
    ideal = x[1]
    rs = g.simple_ideals[ideal]
    t = g.tables[ideal]
    a, b = rs.root(x[2]), rs.root(y[2])
    out: Element = {}

    def put(kind: str, gamma: Optional[Root], coeff: int):
        if gamma is None or coeff == 0:
            return
        key, sign = _signed_step(rs, kind, ideal, gamma)
        out[key] = out.get(key, 0) + sign * coeff

    n_sum = t.N(a, b)
    n_diff = t.N(a, -b)
    s, d = rs.add(a, b), rs.sub(a, b)
    if x[0] == "E+" and y[0] == "E+":
        put("E-", s, -n_sum)
        put("E-", d, -n_diff)
    elif x[0] == "E-" and y[0] == "E-":
        put("E-", s, n_sum)
        put("E-", d, -n_diff)
    elif x[0] == "E+" and y[0] == "E-":
        put("E+", s, n_sum)
        put("E+", d, -n_diff)
        if a == b:
            out = el_add(out, el_scale(Fraction(2), cartan_element(g.coroot_vector(ideal, a))))
    else:
        put("E+", s, n_sum)
        put("E+", d, n_diff)
        if a == b:
            out = el_add(out, el_scale(Fraction(-2), cartan_element(g.coroot_vector(ideal, a))))
    return {k: v for k, v in out.items() if v}


def _cartan_step(g: ReductiveAlgebra, pos: int, y: Key) -> Element:
    ideal = y[1]
    off = g.offsets[ideal]
    rs = g.simple_ideals[ideal]
    if not off <= pos < off + rs.ambient_dim:
        return {}
    c = rs.root(y[2]).ambient[pos - off]
    if not c:
        return {}
    if y[0] == "E+":
        return {("E-", ideal, y[2]): c}
    return {("E+", ideal, y[2]): -c}


def basis_bracket(g: ReductiveAlgebra, x: Key, y: Key) -> Element:
    if x[0] == "h" and y[0] == "h":
        return {}
    if x[0] == "h":
        return _cartan_step(g, x[1], y)
    if y[0] == "h":
        return el_scale(-1, _cartan_step(g, y[1], x))
    return _step_bracket(g, x, y)


def bracket(g: ReductiveAlgebra, x: Element, y: Element) -> Element:
    out: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            for k, c in basis_bracket(g, kx, ky).items():
                out[k] = out.get(k, 0) + cx * cy * c
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class CompactBasisElement:
    kind: str  # "E+", "E-", "H", "U"
    ideal: int
    index: tuple

    def label(self) -> str:
        if self.kind in ("E+", "E-"):
            return f"{self.kind}[{self.ideal}]{self.index}"
        if self.kind == "H":
            return f"H[{self.ideal}]{self.index[0] + 1}"
        return f"U{self.index[0] + 1}"


def compact_basis(g: ReductiveAlgebra) -> list[CompactBasisElement]:
    out = []
    for i, rs in enumerate(g.simple_ideals):
        for a in rs.positive_roots:
            out.append(CompactBasisElement("E+", i, a.simple_coeffs))
            out.append(CompactBasisElement("E-", i, a.simple_coeffs))
        out += [CompactBasisElement("H", i, (j,)) for j in range(rs.rank)]
    out += [CompactBasisElement("U", -1, (a,)) for a in range(g.abelian_dim)]
    return out


def to_element(g: ReductiveAlgebra, x: CompactBasisElement) -> Element:
    if x.kind in ("E+", "E-"):
        return {(x.kind, x.ideal, x.index): Fraction(1)}
    if x.kind == "H":
        rs = g.simple_ideals[x.ideal]
        return cartan_element(g.coroot_vector(x.ideal, rs.simple_roots[x.index[0]]))
    return cartan_element(g.abelian_unit(x.index[0]))


def from_element(g: ReductiveAlgebra, x: Element) -> dict[CompactBasisElement, Fraction]:
    """Expand an element over the compact basis {E+, E-, H_{alpha_i}, U_a}."""
    out: dict[CompactBasisElement, Fraction] = {}
    for k, v in x.items():
        if k[0] in ("E+", "E-"):
            out[CompactBasisElement(k[0], k[1], k[2])] = v
    h = cartan_part(x, g.cartan_coords)
    for i, rs in enumerate(g.simple_ideals):
        blk = g.block(i, h)
        if linalg.is_zero(blk):
            continue
        coords = linalg.solve_coordinates(blk, [rs.coroot(a) for a in rs.simple_roots])
        if coords is None:
            raise ValueError(f"Cartan component outside the span of coroots of ideal {i}")
        for j, c in enumerate(coords):
            if c:
                out[CompactBasisElement("H", i, (j,))] = c
    for a in range(g.abelian_dim):
        c = h[g.abelian_offset + a]
        if c:
            out[CompactBasisElement("U", -1, (a,))] = c
    return out


def compact_bracket(g: ReductiveAlgebra, x: CompactBasisElement, y: CompactBasisElement) -> dict:
    return from_element(g, bracket(g, to_element(g, x), to_element(g, y)))


# --- invariant metric ----------------------------------------------------------


def killing_scale(rs: RootSystem) -> Fraction:
    """kappa with sum_alpha (alpha.v)(alpha.w) = kappa v.w on the Cartan of one simple ideal."""
    v = rs.simple_roots[0].ambient
    total = sum((linalg.dot(a.ambient, v) ** 2 for a in rs.all_roots), Fraction(0))
    return total / linalg.dot(v, v)


ScaleSpec = Union[Fraction, int, str]


class InvariantMetric:
    def __init__(self, g: ReductiveAlgebra, scales: Sequence[Fraction], c: Sequence[Fraction]):
        self.g = g
        self.scales = tuple(Fraction(s) for s in scales)
        self.c = tuple(Fraction(x) for x in c)

    def step_norm(self, key: Key) -> Fraction:
        rs = self.g.simple_ideals[key[1]]
        return self.scales[key[1]] * 4 / rs.root(key[2]).norm2

    def cartan_inner(self, u: Sequence, v: Sequence):
        total = 0
        for i, rs in enumerate(self.g.simple_ideals):
            off = self.g.offsets[i]
            part = 0
            for p in range(off, off + rs.ambient_dim):
                if u[p] and v[p]:
                    part = part + u[p] * v[p]
            if part:
                total = total + self.scales[i] * part
        off = self.g.abelian_offset
        for a in range(self.g.abelian_dim):
            if u[off + a] and v[off + a]:
                total = total + self.c[a] * u[off + a] * v[off + a]
        return total

    def inner(self, x: Element, y: Element):
        total = 0
        for k, v in x.items():
            if k[0] != "h" and k in y:
                total = total + self.step_norm(k) * v * y[k]
        n = self.g.cartan_coords
        hx, hy = cartan_part(x, n), cartan_part(y, n)
        if any(hx) and any(hy):
            total = total + self.cartan_inner(hx, hy)
        return total

    def compact_matrix(self) -> list[list[Fraction]]:
        basis = [to_element(self.g, b) for b in compact_basis(self.g)]
        return [[Fraction(self.inner(x, y)) for y in basis] for x in basis]

    def to_json(self) -> dict:
        return {"scales": [str(s) for s in self.scales], "c": [str(x) for x in self.c]}


def invariant_metric(
    g: ReductiveAlgebra,
    scales: Optional[Union[ScaleSpec, Sequence[ScaleSpec]]] = None,
    c_a: Optional[Union[Fraction, int, Sequence]] = None,
) -> InvariantMetric:
    """
    scales: one value per simple ideal (or a single value for all);
    "killing" selects the Killing-form normalization of that ideal.
    """
    n = len(g.simple_ideals)
    if scales is None:
        scales = [Fraction(1)] * n
    elif isinstance(scales, (str, int, Fraction)):
        scales = [scales] * n
    resolved = []
    for rs, s in zip(g.simple_ideals, scales):
        resolved.append(killing_scale(rs) if s == "killing" else Fraction(s))
    if c_a is None:
        c_a = [Fraction(1)] * g.abelian_dim
    elif isinstance(c_a, (int, Fraction)):
        c_a = [c_a] * g.abelian_dim
    c_a = [Fraction(x) for x in c_a]
    if len(resolved) != n or len(c_a) != g.abelian_dim:
        raise ValueError("one scale per simple ideal and one c_a per u(1) expected")
    for x in resolved + c_a:
        if x <= 0:
            raise NonPositiveScale(f"metric scale must be positive, got {x}")
    return InvariantMetric(g, resolved, c_a)


def verify_invariance(metric: InvariantMetric) -> Report:
    g = metric.g
    basis = [to_element(g, b) for b in compact_basis(g)]
    scan = Scan("ad_invariance")
    n = len(basis)
    for i in range(n):
        for j in range(n):
            xy = bracket(g, basis[i], basis[j])
            for k in range(j, n):
                lhs = metric.inner(xy, basis[k]) + metric.inner(basis[j], bracket(g, basis[i], basis[k]))
                scan.ok(lhs == 0, [i, j, k])
    report = Report(subject=f"invariance {g.name()}")
    report.add(scan.result())
    return report


# --- orthogonal adapted bases and lowered structure constants --------------------------


class AdaptedBasis:
    """
    An ordered B-orthogonal basis of g (or of a complement pair m + k), with
    structure constants f_ij^k computed on demand.

    vectors: elements of g; norms: B(e_i, e_i).
    """

    def __init__(self, g: ReductiveAlgebra, metric: InvariantMetric, vectors: Sequence[Element], labels=None):
        self.g = g
        self.metric = metric
        self.vectors = [dict(v) for v in vectors]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(len(vectors))]
        self.norms = [metric.inner(v, v) for v in self.vectors]
        for i, nrm in enumerate(self.norms):
            if not nrm:
                raise ValueError(f"basis vector {self.labels[i]} has zero norm")
        self._cache: dict[tuple[int, int], dict[int, Coeff]] = {}
        # single-key vectors are looked up directly when projecting
        self._direct = {}
        for i, v in enumerate(self.vectors):
            if len(v) == 1:
                (k, c), = v.items()
                if k[0] != "h":
                    self._direct[k] = (i, c)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, x: Element, strict: bool = True) -> dict[int, Coeff]:
        """Orthogonal projection coefficients; with strict, x must lie in the span."""
        out: dict[int, Coeff] = {}
        residual = dict(x) if strict else None
        steps = {k: v for k, v in x.items() if k[0] != "h"}
        has_cartan = len(steps) != len(x)
        done = set()
        for k, v in steps.items():
            hit = self._direct.get(k)
            if hit is not None:
                i, c = hit
                out[i] = out.get(i, 0) + v / c
                done.add(i)
        for i, b in enumerate(self.vectors):
            if i in done:
                continue
            if not has_cartan and not any(k in steps for k in b):
                continue
            val = self.metric.inner(x, b)
            if val:
                out[i] = val / self.norms[i]
        out = {i: c for i, c in out.items() if c}
        if strict:
            rebuilt = el_add(*[el_scale(c, self.vectors[i]) for i, c in out.items()]) if out else {}
            diff = el_add(residual, el_scale(-1, rebuilt))
            if diff:
                raise ValueError("element is not in the span of the adapted basis")
        return out

    def element(self, coords: dict[int, Coeff]) -> Element:
        return el_add(*[el_scale(c, self.vectors[i]) for i, c in coords.items()]) if coords else {}

    def structure(self, i: int, j: int) -> dict[int, Coeff]:
        """f_ij^k: [e_i, e_j] = sum_k f_ij^k e_k."""
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = self.coordinates(bracket(self.g, self.vectors[i], self.vectors[j]), strict=True)
            self._cache[(j, i)] = {k: -v for k, v in self._cache[key].items()}
        return self._cache[key]

    def lowered(self, i: int, j: int, k: int) -> Coeff:
        """f_ijk = f_ij^k B(e_k, e_k)."""
        return self.structure(i, j).get(k, 0) * self.norms[k]
