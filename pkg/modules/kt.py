"""
Homogeneous KT structures on G/K: coset splits from Dynkin colourings,
positivity assignments from regular elements, invariant complex structures
and their verification.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from modules.chevalley import (
    AdaptedBasis,
    InvariantMetric,
    ReductiveAlgebra,
    cartan_element,
    invariant_metric,
)
from modules.rootsys import (
    Colouring,
    InvalidColouring,
    Root,
    SubSystem,
    colouring_from_indices,
    join_type_names,
    roots_spanned_by,
)
from modules.surd import SurdScalar
from modules.tensor import (
    Endomorphism,
    NotAlmostComplex,
    SplitAlgebra,
    hermitian,
    invariance,
    nijenhuis,
    torsion_form,
    torsion_type,
)
from modules.utils import linalg
from modules.utils.linalg import Vector
from modules.utils.report import CheckResult, Report, Scan

logger = logging.getLogger(__name__)


class OddDimension(ValueError):
    pass


class NotRegular(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PairingIncomplete(ValueError):
    pass


class DegenerateMetric(ValueError):
    pass


RootRef = tuple[int, Root]  # (ideal, root)


class CosetDecomposition:
    """
    g = m + k for a regular subalgebra k: root set delta_k plus Cartan part h_k.

    `algebra` already contains the appended u(1) factors; `extra_u1` counts them.
    """

    def __init__(
        self,
        algebra: ReductiveAlgebra,
        delta_k: Sequence[SubSystem],
        h_k: Sequence[Vector],
        metric: Optional[InvariantMetric] = None,
        h_m: Optional[Sequence[Vector]] = None,
        extra_u1: int = 0,
        colourings: Optional[Sequence[Colouring]] = None,
        k_u1: Sequence[Vector] = (),
    ):
        self.algebra = algebra
        self.metric = metric or invariant_metric(algebra)
        self.delta_k = tuple(delta_k)
        self.extra_u1 = extra_u1
        self.colourings = tuple(colourings) if colourings is not None else None
        self.k_u1 = tuple(tuple(v) for v in k_u1)
        inner = self.metric.cartan_inner

        self.h_k: list[Vector] = self._h_k_basis(h_k, inner)
        if h_m is None:
            self.h_m: list[Vector] = linalg.gram_schmidt(algebra.simple_cartan_basis(), inner, start=self.h_k)
        else:
            self.h_m = [tuple(v) for v in h_m]
            self._check_h_m()
        self.delta_m: tuple[tuple[RootRef, ...], ...] = tuple(
            tuple((i, a) for a in rs.positive_roots if a not in set(self.delta_k[i].positive_roots))
            for i, rs in enumerate(algebra.simple_ideals)
        )
        logger.debug(
            "coset %s / %s: dim m = %d", algebra.name(), self.k_descriptor, self.dim_m
        )

    def _h_k_basis(self, h_k: Sequence[Vector], inner) -> list[Vector]:
        spanning = [
            self.algebra.coroot_vector(i, a) for i, sub in enumerate(self.delta_k) for a in sub.simple_roots
        ]
        spanning += [tuple(v) for v in h_k]
        return linalg.gram_schmidt(spanning, inner)

    def _check_h_m(self):
        inner = self.metric.cartan_inner
        for x, v in enumerate(self.h_m):
            for w in self.h_k:
                if inner(v, w):
                    raise ValueError("h_m is not orthogonal to h_k")
            for u in self.h_m[x + 1 :]:
                if inner(v, u):
                    raise ValueError("h_m basis is not orthogonal")
        if len(self.h_m) + len(self.h_k) != self.algebra.rank:
            raise ValueError(
                f"h_m ({len(self.h_m)}) and h_k ({len(self.h_k)}) do not fill the Cartan (rank {self.algebra.rank})"
            )

    # -- sizes and names

    @property
    def m_roots(self) -> list[RootRef]:
        return [ref for refs in self.delta_m for ref in refs]

    @property
    def dim_m(self) -> int:
        return 2 * len(self.m_roots) + len(self.h_m)

    @property
    def dim_k(self) -> int:
        return sum(2 * len(s.positive_roots) for s in self.delta_k) + len(self.h_k)

    @property
    def abelian_k(self) -> int:
        return len(self.h_k) - sum(s.rank for s in self.delta_k)

    @property
    def k_descriptor(self) -> str:
        name = join_type_names(s.type_name for s in self.delta_k)
        u = self.abelian_k
        parts = [] if name == "0" else [name]
        if u:
            parts.append("u(1)" if u == 1 else f"u(1)^{u}")
        return "+".join(parts) or "0"

    # -- the adapted basis

    @cached_property
    def m_vectors(self) -> list[tuple[str, dict]]:
        out = []
        for i, a in self.m_roots:
            out.append((f"E+[{i}]{a.label()}", {("E+", i, a.simple_coeffs): Fraction(1)}))
            out.append((f"E-[{i}]{a.label()}", {("E-", i, a.simple_coeffs): Fraction(1)}))
        for j, v in enumerate(self.h_m):
            out.append((f"h_m[{j}]", cartan_element(v)))
        return out

    @cached_property
    def k_vectors(self) -> list[tuple[str, dict]]:
        out = []
        for i, sub in enumerate(self.delta_k):
            for a in sub.positive_roots:
                out.append((f"E+[{i}]{a.label()}", {("E+", i, a.simple_coeffs): Fraction(1)}))
                out.append((f"E-[{i}]{a.label()}", {("E-", i, a.simple_coeffs): Fraction(1)}))
        for j, v in enumerate(self.h_k):
            out.append((f"h_k[{j}]", cartan_element(v)))
        return out

    @cached_property
    def split(self) -> SplitAlgebra:
        vectors = self.m_vectors + self.k_vectors
        basis = AdaptedBasis(self.algebra, self.metric, [v for _, v in vectors], [l for l, _ in vectors])
        n = len(self.m_vectors)
        return SplitAlgebra(basis, range(n), range(n, len(vectors)))

    def step_index(self, ideal: int, root: Root) -> int:
        """m-local index of E+_root (E-_root is the next one)."""
        return 2 * self._step_pos[(ideal, root.simple_coeffs)]

    @cached_property
    def _step_pos(self) -> dict:
        return {(i, a.simple_coeffs): p for p, (i, a) in enumerate(self.m_roots)}

    @property
    def cartan_offset(self) -> int:
        return 2 * len(self.m_roots)

    @cached_property
    def _k_roots(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(s.positive_roots) for s in self.delta_k)

    def in_k(self, ideal: int, root: Root) -> bool:
        pos = root if root.is_positive else -root
        return pos in self._k_roots[ideal]

    def h_one(self) -> list[Vector]:
        """Orthogonal basis of h_m + (abelian part of k)."""
        inner = self.metric.cartan_inner
        semisimple = [
            self.algebra.coroot_vector(i, a) for i, sub in enumerate(self.delta_k) for a in sub.simple_roots
        ]
        hu = linalg.gram_schmidt(semisimple, inner)
        return linalg.gram_schmidt(self.h_m + self.h_k, inner, start=hu)

    def with_metric(self, metric: InvariantMetric) -> "CosetDecomposition":
        """
        Same k under another metric. h_m is re-projected onto the new orthogonal
        complement of h_k in its old order; vectors already orthogonal are kept as they are.
        """
        inner = metric.cartan_inner
        h_k = self._h_k_basis(self.k_u1, inner)
        h_m = linalg.gram_schmidt(
            self.h_m + self.algebra.simple_cartan_basis(), inner, start=h_k, make_primitive=False
        )
        return CosetDecomposition(
            self.algebra, self.delta_k, self.k_u1, metric, h_m, self.extra_u1, self.colourings, self.k_u1
        )

    def h_coefficients(self, v: Vector) -> list[str]:
        """Express a Cartan vector over H_{alpha_i} (every ideal) and U_a."""
        coords = linalg.solve_coordinates(v, self.algebra.simple_cartan_basis())
        return [str(c) for c in coords] if coords is not None else []

    def to_json(self) -> dict:
        return {
            "g": self.algebra.name(),
            "k": self.k_descriptor,
            "extra_u1": self.extra_u1,
            "dim_g": self.algebra.dimension,
            "dim_k": self.dim_k,
            "dim_m": self.dim_m,
            "colourings": [c.to_json() for c in self.colourings] if self.colourings else None,
            "h_m": [self.h_coefficients(v) for v in self.h_m],
            "h_k": [self.h_coefficients(v) for v in self.h_k],
            "delta_m_positive": len(self.m_roots),
        }


def _pad(v: Sequence, n: int) -> Vector:
    v = linalg.vec(v)
    if len(v) > n:
        raise ValueError(f"Cartan vector of length {len(v)} exceeds {n} coordinates")
    return v + linalg.zeros(n - len(v))


def coset_from_colouring(
    g: ReductiveAlgebra,
    colourings: Sequence[Union[Colouring, Iterable[int]]],
    k_u1_selection: Sequence[Sequence] = (),
    extra_u1: int = 0,
    metric: Optional[InvariantMetric] = None,
) -> CosetDecomposition:
    """
    k = span of the coloured sub-diagrams plus the selected Cartan directions.

    k_u1_selection vectors use g's Cartan coordinates; they must be orthogonal
    to every coloured coroot.
    """
    if len(colourings) != len(g.simple_ideals):
        raise InvalidColouring(f"expected {len(g.simple_ideals)} colourings, got {len(colourings)}")
    cols = [
        c if isinstance(c, Colouring) else colouring_from_indices(rs, c) for rs, c in zip(g.simple_ideals, colourings)
    ]
    algebra = g.with_abelian(extra_u1) if extra_u1 else g
    metric = metric or invariant_metric(algebra)
    delta_k = [roots_spanned_by(rs, c.coloured) for rs, c in zip(algebra.simple_ideals, cols)]
    k_u1 = [_pad(v, algebra.cartan_coords) for v in k_u1_selection]
    coloured = [algebra.coroot_vector(i, rs.simple_roots[j - 1]) for i, (rs, c) in enumerate(zip(algebra.simple_ideals, cols)) for j in c.coloured]
    for v in k_u1:
        for w in coloured:
            if metric.cartan_inner(v, w):
                raise InvalidColouring("selected u(1) direction is not orthogonal to the coloured coroots")
    d = CosetDecomposition(algebra, delta_k, k_u1, metric, extra_u1=extra_u1, colourings=cols, k_u1=k_u1)
    if linalg.rank(list(d.h_k)) != len(d.h_k):
        raise InvalidColouring("selected u(1) directions are dependent")
    return d


# --- positivity ---------------------------------------------------------------------


@dataclass
class PositivityAssignment:
    eps: dict[tuple[int, tuple[int, ...]], int]
    witness: Vector

    def of(self, ideal: int, root: Root) -> int:
        if root.is_positive:
            return self.eps[(ideal, root.simple_coeffs)]
        return -self.eps[(ideal, (-root).simple_coeffs)]

    def flipped(self, ideal: int, root: Root) -> "PositivityAssignment":
        """The same assignment with one sign reversed (no longer from a chamber)."""
        eps = dict(self.eps)
        key = (ideal, root.simple_coeffs)
        eps[key] = -eps[key]
        return PositivityAssignment(eps, self.witness)

    def positive_count(self) -> int:
        return sum(1 for v in self.eps.values() if v > 0)

    def to_json(self) -> dict:
        return {
            "witness": [str(x) for x in self.witness],
            "eps": [[i, list(c), s] for (i, c), s in sorted(self.eps.items())],
        }


def positivity_from_regular(d: CosetDecomposition, lam: Sequence) -> PositivityAssignment:
    """eps(alpha) = sign alpha(lambda) for lambda in h_m + (abelian part of k)."""
    lam = _pad(lam, d.algebra.cartan_coords)
    inner = d.metric.cartan_inner
    for i, sub in enumerate(d.delta_k):
        for a in sub.simple_roots:
            if inner(lam, d.algebra.coroot_vector(i, a)):
                raise NotRegular("lambda has a component along the semi-simple part of k", witness=[i, list(a.simple_coeffs)])
    eps = {}
    for i, a in d.m_roots:
        val = d.algebra.root_value(i, a, lam)
        if val == 0:
            raise NotRegular(f"lambda lies on the wall of root {a.label()}", witness=[i, list(a.simple_coeffs)])
        eps[(i, a.simple_coeffs)] = 1 if val > 0 else -1
    return PositivityAssignment(eps, lam)


def default_regular_element(d: CosetDecomposition) -> Vector:
    basis = d.h_one()
    if not basis:
        raise NotRegular("no Cartan directions available for a regular element")
    t = 2
    while True:
        lam = linalg.combine([Fraction(t) ** (j + 1) for j in range(len(basis))], basis)
        if all(d.algebra.root_value(i, a, lam) != 0 for i, a in d.m_roots):
            return lam
        t += 1


def verify_positivity(d: CosetDecomposition, eps: PositivityAssignment) -> Report:
    """Compatibility of eps with k (ad-invariance) and closure of the induced positive set."""
    what1, what2 = Scan("what1"), Scan("what2")
    pos1, pos2, pos3 = Scan("pos1"), Scan("pos2"), Scan("pos3")
    for i, rs in enumerate(d.algebra.simple_ideals):
        m_all = [a for a in rs.all_roots if not d.in_k(i, a)]
        k_all = [a for a in rs.all_roots if d.in_k(i, a)]
        plus = {a for a in m_all if eps.of(i, a) > 0}
        pos1.ok(all((-a in plus) != (a in plus) for a in m_all), i)
        for a in m_all:
            for b in k_all:
                s = rs.add(a, b)
                if s is not None:
                    what1.ok(eps.of(i, s) == eps.of(i, a), [i, list(a.simple_coeffs), list(b.simple_coeffs)])
                    if a in plus:
                        pos2.ok(s in plus, [i, list(a.simple_coeffs), list(b.simple_coeffs)])
            for b in m_all:
                s = rs.add(a, b)
                if s is None or d.in_k(i, s):
                    continue
                if eps.of(i, a) == eps.of(i, b):
                    what2.ok(eps.of(i, s) == eps.of(i, a), [i, list(a.simple_coeffs), list(b.simple_coeffs)])
                if a in plus and b in plus:
                    pos3.ok(s in plus, [i, list(a.simple_coeffs), list(b.simple_coeffs)])
    report = Report(subject="positivity")
    for s in (what1, what2, pos1, pos2, pos3):
        report.add(s.result())
    return report


# --- Cartan pairings and complex structures ---------------------------------------------


@dataclass
class CartanPairing:
    """
    An orthogonal frame of h_m (coordinates over the h_m basis) grouped in
    pairs (i, j, r): I v_i = r v_j, I v_j = -v_i / r.
    """

    frame: list[Vector]
    norms: list[Fraction]
    pairs: list[tuple[int, int, SurdScalar]] = field(default_factory=list)

    def r_squared(self) -> list[Fraction]:
        return [(r * r).to_fraction() for _, _, r in self.pairs]

    def to_json(self) -> dict:
        return {
            "frame": [[str(x) for x in v] for v in self.frame],
            "pairs": [[i, j, str(r)] for i, j, r in self.pairs],
        }


def _gram_inner(gram: Sequence[Sequence[Fraction]]):
    def inner(u, v):
        return sum((u[i] * gram[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]), Fraction(0))

    return inner


def solve_cartan_pairing(gram: Sequence[Sequence[Fraction]]) -> CartanPairing:
    """
    Greedy rational Gram-Schmidt in basis order, then consecutive pairing with
    r_i^2 = |v_i|^2 / |v_j|^2.
    """
    n = len(gram)
    if n % 2:
        raise OddDimension(f"h_m has odd dimension {n}")
    inner = _gram_inner([[Fraction(x) for x in row] for row in gram])
    frame = linalg.gram_schmidt([linalg.unit(n, i) for i in range(n)], inner)
    if len(frame) != n:
        raise DegenerateMetric("metric on h_m is degenerate")
    norms = [inner(v, v) for v in frame]
    if any(x <= 0 for x in norms):
        raise DegenerateMetric("metric on h_m is not positive definite")
    pairs = [(i, i + 1, SurdScalar.sqrt(norms[i] / norms[i + 1])) for i in range(0, n, 2)]
    return CartanPairing(frame, norms, pairs)


def cartan_gram(d: CosetDecomposition) -> list[list[Fraction]]:
    inner = d.metric.cartan_inner
    return [[Fraction(inner(u, v)) for v in d.h_m] for u in d.h_m]


def default_pairing(d: CosetDecomposition) -> CartanPairing:
    return solve_cartan_pairing(cartan_gram(d))


def validate_pairing(d: CosetDecomposition, pairs: Sequence[tuple[Sequence, Sequence]]) -> CartanPairing:
    """A caller-chosen pairing of Cartan vectors of h_m, checked for orthogonality and completeness."""
    inner = d.metric.cartan_inner
    frame, norms, out = [], [], []
    for x, y in pairs:
        for v in (x, y):
            v = _pad(v, d.algebra.cartan_coords)
            coords = [inner(v, b) / inner(b, b) for b in d.h_m]
            if not d.h_m or linalg.combine(coords, d.h_m) != v:
                raise PairingIncomplete("pairing vector is not in h_m")
            frame.append(tuple(coords))
            norms.append(inner(v, v))
        i = len(frame) - 2
        out.append((i, i + 1, SurdScalar.sqrt(norms[i] / norms[i + 1])))
    _check_frame(d, frame, norms)
    return CartanPairing(frame, norms, out)


def _check_frame(d: CosetDecomposition, frame: list[Vector], norms: list[Fraction]):
    if len(frame) != len(d.h_m):
        raise PairingIncomplete(f"pairing covers {len(frame)} of {len(d.h_m)} Cartan directions")
    hn = [d.metric.cartan_inner(b, b) for b in d.h_m]
    for x in range(len(frame)):
        for y in range(x + 1, len(frame)):
            if sum(frame[x][b] * frame[y][b] * hn[b] for b in range(len(hn))):
                raise PairingIncomplete("pairing frame is not orthogonal")


def complex_structure(
    d: CosetDecomposition, eps: PositivityAssignment, pairing: Optional[CartanPairing] = None
) -> Endomorphism:
    """I(E+_a) = -eps_a E-_a, I(E-_a) = eps_a E+_a; on h_m through the pairing."""
    if d.dim_m % 2:
        raise OddDimension(f"dim m = {d.dim_m} is odd; append u(1) factors")
    if pairing is None:
        pairing = default_pairing(d)
    _check_frame(d, pairing.frame, pairing.norms)
    n = d.dim_m
    labels = [l for l, _ in d.m_vectors]
    I = Endomorphism(n, labels=labels)
    for p, (i, a) in enumerate(d.m_roots):
        e = eps.of(i, a)
        I.set_column(2 * p, {2 * p + 1: Fraction(-e)})
        I.set_column(2 * p + 1, {2 * p: Fraction(e)})
    off = d.cartan_offset
    hn = [d.metric.cartan_inner(b, b) for b in d.h_m]
    image_of_frame: dict[int, list] = {}
    for i, j, r in pairing.pairs:
        image_of_frame[i] = [r * x for x in pairing.frame[j]]
        image_of_frame[j] = [-x / r for x in pairing.frame[i]]
    for b in range(len(d.h_m)):
        image = [0] * len(d.h_m)
        for v, vec in enumerate(pairing.frame):
            c = vec[b] * hn[b] / pairing.norms[v]
            if c:
                image = [x + c * y for x, y in zip(image, image_of_frame[v])]
        I.set_column(off + b, {off + x: y for x, y in enumerate(image) if y})
    if not I.square_is_minus_identity():
        raise NotAlmostComplex("constructed I does not square to -1")
    return I


# --- verification -------------------------------------------------------------------


class KTReport(Report):
    def _flag(self, name: str) -> bool:
        c = self.get(name)
        return bool(c and c.passed)

    @property
    def square(self) -> bool:
        return self._flag("square")

    @property
    def integrable(self) -> bool:
        return self._flag("nijenhuis")

    @property
    def hermitian(self) -> bool:
        return self._flag("hermitian")


def reductivity(split: SplitAlgebra) -> CheckResult:
    scan = Scan("reductive")
    for a in range(split.dim_k):
        for i in range(split.dim_m):
            try:
                split.bracket_km(a, i)
                scan.ok(True)
            except ValueError:
                scan.ok(False, [a, i])
    return scan.result()


def verify_kt(d: CosetDecomposition, I: Endomorphism, B: Optional[InvariantMetric] = None) -> KTReport:
    if B is not None and B is not d.metric:
        d = d.with_metric(B)
    split = d.split
    report = KTReport(subject=f"KT {d.algebra.name()} / {d.k_descriptor}")
    report.info = {"dim_m": d.dim_m, "delta_m_positive": len(d.m_roots)}
    square = I.square_is_minus_identity()
    report.add(CheckResult(name="square", passed=square, checked=I.dim))
    red = report.add(reductivity(split))
    if red.passed:
        report.add(invariance(I, split))
    if not square:
        for name in ("nijenhuis", "hermitian", "torsion_type"):
            report.add(CheckResult(name=name, passed=False, detail="I^2 != -1"))
        return report
    report.add(nijenhuis(I, split).result())
    report.add(hermitian(split.m_norms, I))
    report.add(torsion_type(torsion_form(split), I))
    logger.info("%s: %s", report.subject, "pass" if report.passed else "FAIL")
    return report


def kt_structure(d: CosetDecomposition, lam: Optional[Sequence] = None) -> tuple[PositivityAssignment, Endomorphism]:
    lam = default_regular_element(d) if lam is None else lam
    eps = positivity_from_regular(d, lam)
    return eps, complex_structure(d, eps)


# --- worked E8 example -----------------------------------------------------------------

# nodes 2,3,4,5 form D4 and node 8 an A1 (Bourbaki numbering)
E8_COLOURING = (2, 3, 4, 5, 8)

# H_{alpha_i} coefficients of a basis of the Cartan directions orthogonal to the coloured coroots
E8_H_ONE = (
    (2, 0, 1, 0, -1, -2, 0, 0),
    (-2, 1, 0, 2, 3, 4, 0, 0),
    (0, 0, 0, 0, 0, 0, 2, 1),
)

# (a, b): k gets a u(1)'s, g gets b extra central u(1)'s
E8_EXAM = ((0, 1), (1, 0), (2, 1), (3, 0))


def e8_cartan_vector(g: ReductiveAlgebra, h_coeffs: Sequence[int]) -> Vector:
    rs = g.simple_ideals[0]
    return linalg.combine(list(h_coeffs), [g.coroot_vector(0, a) for a in rs.simple_roots])


def e8_example(a: int = 0, b: int = 0) -> CosetDecomposition:
    g = ReductiveAlgebra.of("E8", abelian_dim=b)
    k_u1 = [e8_cartan_vector(g, E8_H_ONE[x]) for x in range(a)]
    return coset_from_colouring(g, [E8_COLOURING], k_u1)


def e8_exam_variants() -> list[tuple[int, int, CosetDecomposition]]:
    return [(a, b, e8_example(a, b)) for a, b in E8_EXAM]
