"""
Quaternionic KT quotients G / (K x Phi(U(2))) of the homogeneous HKT spaces:
the diagonal u(2) embedding over the levels, its rationalization, the
complement m~ with the restricted structures J_r and the sp(1) action f_r,
and the eight-dimensional classification.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import isqrt
from typing import Optional, Sequence

from pydantic import BaseModel

from modules.chevalley import (
    AdaptedBasis,
    InvariantMetric,
    ReductiveAlgebra,
    bracket,
    cartan_element,
    el_add,
    el_scale,
)
from modules.hkt import (
    HyperComplexTriple,
    LevelCountMismatch,
    LevelDecomposition,
    Table2Row,
    enumerate_table2,
    hkt_coset,
    hypercomplex_triple,
    joyce_decompose,
    quaternion_relations,
    verify_hkt,
)
from modules.rootsys import AlgebraType, parse_algebra
from modules.surd import SurdScalar
from modules.tensor import (
    AltForm,
    Endomorphism,
    SplitAlgebra,
    dh_form,
    endomorphism_entries,
    hermitian,
    proportionality,
    torsion_form,
    torsion_type,
    type_split,
)
from modules.utils import linalg
from modules.utils.report import CheckResult, Report, Scan

logger = logging.getLogger(__name__)


class RationalizationFailed(ValueError):
    pass


class NotInvariant(ValueError):
    pass


SEARCH_HEIGHT_CAP = 64

# (r, s, t) with Y_r Y_s = Y_t
CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


# --- rational rotations -----------------------------------------------------------------


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def _sqrt_rational(q: Fraction) -> Fraction:
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def helmert_rows(a: Sequence) -> list[list[SurdScalar]]:
    """
    Orthonormal rows whose first row is a / |a|.

    Entries a_k must be non-zero with rational squares; every entry of the
    result is then a single surd.
    """
    a = [SurdScalar.coerce(x) for x in a]
    sq = [(x * x).to_fraction() for x in a]
    prefix = [Fraction(0)]
    for s in sq:
        prefix.append(prefix[-1] + s)
    n = len(a)
    rows = [[x / SurdScalar.sqrt(prefix[n]) for x in a]]
    for k in range(1, n):
        scale = 1 / SurdScalar.sqrt(prefix[k] * prefix[k + 1] / sq[k])
        row = [x * scale for x in a[:k]]
        row.append(-prefix[k] / a[k] * scale)
        row += [SurdScalar()] * (n - k - 1)
        rows.append(row)
    return rows


def rotation_summing_to(a: Sequence) -> list[list[SurdScalar]]:
    """Orthogonal O with sum_j O_jk = a_k (requires sum a_k^2 = len(a))."""
    n = len(a)
    ones = helmert_rows([1] * n)
    target = helmert_rows(a)
    return [[sum((ones[m][j] * target[m][k] for m in range(n)), SurdScalar()) for k in range(n)] for j in range(n)]


@dataclass
class U2Embedding:
    ld: LevelDecomposition
    triple: HyperComplexTriple
    # U = scale * direction, direction a rational Cartan vector
    direction: tuple
    scale: SurdScalar
    phi: list[dict]
    levels_used: int
    groups: list[dict] = field(default_factory=list)

    @property
    def u_element(self) -> dict:
        return cartan_element(self.direction)

    def closure(self) -> Report:
        """[phi(Y_r), phi(Y_s)] = 2 phi(Y_t) and U central in the span."""
        g = self.triple.coset.algebra
        scan = Scan("u2_closure")
        if self.levels_used:
            for r, s, t in CYCLIC:
                lhs = bracket(g, self.phi[r - 1], self.phi[s - 1])
                scan.ok(el_add(lhs, el_scale(-2, self.phi[t - 1])) == {}, [r, s])
            for r in range(3):
                scan.ok(bracket(g, self.u_element, self.phi[r]) == {}, ["U", r + 1])
        rational = all(isinstance(x, Fraction) or isinstance(x, int) for x in self.direction)
        report = Report(subject="u(2) embedding")
        report.add(scan.result())
        report.add(CheckResult(name="u_rational", passed=rational, checked=len(self.direction)))
        return report

    def to_json(self) -> dict:
        return {
            "levels": self.levels_used,
            "U_direction": [str(x) for x in self.direction],
            "U_scale": str(self.scale),
            "groups": self.groups,
        }


def embed_u2(
    ld: LevelDecomposition,
    k_u1: int = 0,
    u1_append: Optional[int] = None,
    phi_signs: Optional[Sequence[int]] = None,
    search_cap: int = SEARCH_HEIGHT_CAP,
    metric: Optional[InvariantMetric] = None,
) -> U2Embedding:
    """
    U = sum of the pairing vectors. Levels sharing B(H_psi, H_psi) are rotated
    among themselves so that U has a rational direction; between groups the
    relative scales must be rational, found by a bounded search.
    """
    d = hkt_coset(ld, k_u1, u1_append, metric)
    B = d.metric
    l = ld.level_count
    avail = d.h_m[l:]
    if len(avail) < l:
        raise LevelCountMismatch(f"{l} levels but only {len(avail)} abelian directions")
    if l == 0:
        return _flat_embedding(ld, k_u1, u1_append, metric)
    norms = [Fraction(B.cartan_inner(v, v)) for v in avail]
    c = [Fraction(B.cartan_inner(d.h_m[j], d.h_m[j])) for j in range(l)]
    groups: dict[Fraction, list[int]] = {}
    for j in range(l):
        groups.setdefault(c[j], []).append(j)

    pairing: list[dict] = [dict() for _ in range(l)]
    direction = linalg.zeros(d.algebra.cartan_coords)
    first_mu2 = None
    info = []
    for cg, members in groups.items():
        n = len(members)
        t2 = [norms[j] / cg for j in members]
        if first_mu2 is None:
            q = [1] * n
            Q = sum((norms[j] for j in members), Fraction(0))
            mu2 = n * cg / Q
            first_mu2 = mu2
            rho = Fraction(1)
        else:
            q, mu2 = _find_weights(n, cg, [norms[j] for j in members], first_mu2, search_cap)
            rho = _sqrt_rational(mu2 / first_mu2)
        mu = SurdScalar.sqrt(mu2)
        a = [mu * q[x] * SurdScalar.sqrt(t2[x]) for x in range(n)]
        O = rotation_summing_to(a)
        for jj, j in enumerate(members):
            for kk, k in enumerate(members):
                coef = O[jj][kk] / SurdScalar.sqrt(t2[kk])
                if coef:
                    pairing[j][k] = coef
        for x, j in enumerate(members):
            direction = linalg.add(direction, linalg.scale(rho * q[x], avail[j]))
        info.append({"c": str(cg), "levels": [j + 1 for j in members], "weights": q})

    triple = hypercomplex_triple(ld, u1_append, k_u1, phi_signs=phi_signs, pairing=pairing, metric=metric)
    g = triple.coset.algebra
    phi = [
        el_add(*[cartan_element(g.coroot_vector(lv.ideal, lv.psi)) for lv in ld.levels]),
        el_add(*[{("E+", lv.ideal, lv.psi.simple_coeffs): Fraction(s)} for lv, s in zip(ld.levels, triple.signs)]),
        el_add(*[{("E-", lv.ideal, lv.psi.simple_coeffs): Fraction(s)} for lv, s in zip(ld.levels, triple.signs)]),
    ]
    emb = U2Embedding(ld, triple, direction, SurdScalar.sqrt(first_mu2), phi, l, info)
    logger.debug("u(2) embedding over %d levels, %d groups", l, len(groups))
    return emb


def _find_weights(n: int, c: Fraction, norms: list[Fraction], first_mu2: Fraction, cap: int) -> tuple[list[int], Fraction]:
    """Smallest-height positive q with (n c / sum q_j^2 N_j) / first_mu2 a rational square."""
    for h in range(1, cap + 1):
        for q in product(range(1, h + 1), repeat=n):
            if max(q) != h:
                continue
            Q = sum((x * x * N for x, N in zip(q, norms)), Fraction(0))
            mu2 = n * c / Q
            if _is_square(mu2 / first_mu2):
                return list(q), mu2
    raise RationalizationFailed(f"no rational weights of height <= {cap} for a group of {n} levels with c = {c}")


def _flat_embedding(ld, k_u1, u1_append, metric) -> U2Embedding:
    triple = hypercomplex_triple(ld, u1_append, k_u1, metric=metric)
    d = triple.coset
    if len(triple.flat) < 4:
        raise LevelCountMismatch("no levels and no flat block to embed u(2) in")
    off = d.cartan_offset
    e0 = triple.flat[0]
    u = {off + e0: Fraction(1)}
    basis = d.split.basis
    phi = [basis.element(I.apply(u)) for I in triple.structures]
    return U2Embedding(ld, triple, d.h_m[e0], SurdScalar.rational(1), phi, 0, [])


def mai_basis(emb: U2Embedding) -> dict[str, list[dict]]:
    """
    K: U and phi(Y_r). M: the level differences orthogonal to them, rational
    Gram-Schmidt on H_psi_j and their images under I_1, I_2, I_3.
    """
    d = emb.triple.coset
    g, B = d.algebra, d.metric
    h_psi = [cartan_element(g.coroot_vector(lv.ideal, lv.psi)) for lv in emb.ld.levels]
    accepted = [emb.phi[0]]
    m_h = []
    for x in h_psi[1:]:
        r = dict(x)
        for b in accepted:
            coef = Fraction(B.inner(r, b)) / Fraction(B.inner(b, b))
            r = el_add(r, el_scale(-coef, b))
        if r:
            accepted.append(r)
            m_h.append(r)
    M = list(m_h)
    for I in emb.triple.structures:
        M += [_apply(d, I, x) for x in m_h]
    return {"K": [emb.u_element] + list(emb.phi), "M": M}


def _apply(d, I: Endomorphism, element: dict) -> dict:
    basis = d.split.basis
    coords = basis.coordinates(element)
    n = d.dim_m
    if any(i >= n for i in coords):
        raise NotInvariant("element has a k-component")
    return basis.element(I.apply(coords))


def verify_mai(emb: U2Embedding) -> CheckResult:
    B = emb.triple.coset.metric
    vectors = [v for part in mai_basis(emb).values() for v in part]
    scan = Scan("mai_orthogonal")
    for x, y in combinations(range(len(vectors)), 2):
        scan.ok(B.inner(vectors[x], vectors[y]) == 0, [x, y])
    return scan.result()


# --- the quotient -----------------------------------------------------------------------


class QKTDecomposition:
    def __init__(self, emb: U2Embedding):
        self.emb = emb
        hkt = emb.triple.coset
        self.hkt = hkt
        g = hkt.algebra
        self.algebra = g
        labels, vectors = [], []
        for lv in emb.ld.levels:
            for b in lv.f:
                for kind in ("E+", "E-"):
                    labels.append(f"{kind}[{lv.ideal}]{b.label()}")
                    vectors.append({(kind, lv.ideal, b.simple_coeffs): Fraction(1)})
        if emb.levels_used:
            for x, v in enumerate(mai_basis(emb)["M"]):
                labels.append(f"M[{x}]")
                vectors.append(v)
            flat = emb.triple.flat
        else:
            flat = emb.triple.flat[4:]
        for a in flat:
            labels.append(f"flat[{a}]")
            vectors.append(cartan_element(hkt.h_m[emb.levels_used + a]))
        self.m_labels = labels
        self.dim = len(vectors)
        if self.dim != hkt.dim_m - 4:
            raise NotInvariant(f"complement has dimension {self.dim}, expected {hkt.dim_m - 4}")
        self.k_count = len(hkt.k_vectors)
        k_vectors = [v for _, v in hkt.k_vectors]
        phi_vectors = [emb.u_element] + list(emb.phi)
        basis = AdaptedBasis(
            g,
            hkt.metric,
            vectors + k_vectors + phi_vectors,
            labels + [lb for lb, _ in hkt.k_vectors] + ["U", "phi(Y1)", "phi(Y2)", "phi(Y3)"],
        )
        n = self.dim
        self.split = SplitAlgebra(basis, range(n), range(n, basis.dim))
        self.J = [self._restrict(I) for I in emb.triple.structures]
        self.f = [self._adjoint(p) for p in emb.phi] if emb.levels_used else [Endomorphism.zero(n) for _ in range(3)]
        logger.debug("quotient of %s: dim %d", g.name(), n)

    def _local(self, element: dict, what: str) -> dict:
        coords = self.split.basis.coordinates(element)
        outside = [i for i in coords if i >= self.dim]
        if outside:
            raise NotInvariant(f"{what} leaves the complement (component {self.split.basis.labels[outside[0]]})")
        return coords

    def _restrict(self, I: Endomorphism) -> Endomorphism:
        J = Endomorphism(self.dim, labels=self.m_labels)
        for i, v in enumerate(self.split.basis.vectors[: self.dim]):
            J.set_column(i, self._local(_apply(self.hkt, I, v), "I_r"))
        return J

    def _adjoint(self, x: dict) -> Endomorphism:
        F = Endomorphism(self.dim, labels=self.m_labels)
        for i, v in enumerate(self.split.basis.vectors[: self.dim]):
            F.set_column(i, self._local(bracket(self.algebra, x, v), "ad phi(Y_r)"))
        return F

    @property
    def levels(self) -> int:
        return self.emb.levels_used

    @property
    def m_norms(self) -> list:
        return self.split.m_norms

    def torsion(self) -> AltForm:
        return torsion_form(self.split)

    def to_json(self) -> dict:
        return {
            "g": self.algebra.name(),
            "k": self.hkt.k_descriptor,
            "dim_hkt": self.hkt.dim_m,
            "dim": self.dim,
            "levels": self.levels,
            "embedding": self.emb.to_json(),
        }


def qkt_decompose(emb: U2Embedding) -> QKTDecomposition:
    return QKTDecomposition(emb)


def _fj_relation(scan: Scan, A: list[Endomorphism], C: list[Endomorphism], target: list[Endomorphism], tag: str):
    """[A_r, C_s] = 2 eps_rst T_t for all r, s."""
    for r in range(3):
        scan.ok(A[r].commutator(C[r]).is_zero(), [tag, r + 1, r + 1])
    for r, s, t in CYCLIC:
        for x, y, sign in ((r, s, 2), (s, r, -2)):
            lhs = A[x - 1].commutator(C[y - 1])
            rhs = target[t - 1].scaled(sign)
            scan.ok(lhs == rhs, [tag, x, y, *(lhs.first_difference(rhs) or ())])


def verify_qkt(q: QKTDecomposition, B: Optional[InvariantMetric] = None) -> Report:
    report = Report(subject=f"QKT {q.algebra.name()} / {q.hkt.k_descriptor} x U(2)")
    report.info = {"dim": q.dim, "levels": q.levels}
    report.add(quaternion_relations(*q.J))
    if q.levels:
        for name, (A, C, T) in {
            "fj_fJ": (q.f, q.J, q.J),
            "fj_ff": (q.f, q.f, q.f),
            "fj_JJ": (q.J, q.J, q.J),
        }.items():
            scan = Scan(name)
            _fj_relation(scan, A, C, T, name)
            report.add(scan.result())
    else:
        report.info["fj"] = "not applicable"
    norms = q.m_norms if B is None else [B.inner(v, v) for v in q.split.basis.vectors[: q.dim]]
    H = q.torsion()
    for r, J in enumerate(q.J, start=1):
        report.add(hermitian(norms, J, f"J{r}.hermitian"))
        report.add(torsion_type(H, J, f"J{r}.torsion_type"))
    report.add(_k_invariance(q))
    report.add(_torsion_restriction(q, H))
    report.info["torsion_vanishes"] = H.is_zero()
    logger.info("%s: %s", report.subject, "pass" if report.passed else "FAIL")
    return report


def _k_invariance(q: QKTDecomposition) -> CheckResult:
    """J_r commutes with ad(k) for the isotropy k of the HKT space."""
    scan = Scan("k_invariance")
    split = q.split
    for a in range(q.k_count):
        ad = Endomorphism(q.dim, [split.bracket_km(a, i) for i in range(q.dim)])
        for r, J in enumerate(q.J, start=1):
            scan.ok(J.compose(ad) == ad.compose(J), [a, r])
    return scan.result()


def _torsion_restriction(q: QKTDecomposition, H: AltForm) -> CheckResult:
    """H~(x, y, z) = -B([x, y], z), the torsion of the HKT space evaluated on the complement."""
    scan = Scan("torsion_restriction")
    vecs = q.split.basis.vectors[: q.dim]
    B = q.hkt.metric
    for i, j, k in combinations(range(q.dim), 3):
        full = -B.inner(bracket(q.algebra, vecs[i], vecs[j]), vecs[k])
        scan.ok(H.get((i, j, k)) == full, [i, j, k])
    return scan.result()


# --- dH -------------------------------------------------------------------------------


def two_form(E: Endomorphism, norms: Sequence) -> AltForm:
    """omega(e_i, e_j) = B(e_i, E e_j) for a B-skew E."""
    out = AltForm(2, E.dim)
    for (i, j), c in endomorphism_entries(E).items():
        if i < j:
            out.components[(i, j)] = norms[i] * c
    return out


def wedge_square(w: AltForm) -> AltForm:
    out = AltForm(4, w.dim)
    for q in combinations(range(w.dim), 4):
        i, j, k, l = q
        v = w.get((i, j)) * w.get((k, l)) - w.get((i, k)) * w.get((j, l)) + w.get((i, l)) * w.get((j, k))
        if v:
            out.components[q] = 2 * v
    return out


def dh_type_analysis(q: QKTDecomposition) -> Report:
    """
    Type decomposition of dH on the complement: the (4,0) part always vanishes,
    and above dimension four dH can only be of type (2,2) when f_r is proportional to J_r.
    """
    report = Report(subject=f"dH {q.algebra.name()}")
    dH = dh_form(q.split)
    report.info["dH_zero"] = dH.is_zero()
    pure22 = True
    for r, J in enumerate(q.J, start=1):
        ts = type_split(dH, J)
        report.add(CheckResult(name=f"J{r}.dh_40", passed=ts.vanishes(4) and ts.vanishes(0)))
        pure22 = pure22 and ts.vanishes(3) and ts.vanishes(1)
    report.info["pure_22"] = pure22
    ratios = []
    for r in range(3):
        lam = proportionality(endomorphism_entries(q.f[r]), endomorphism_entries(q.J[r]))
        ratios.append(None if lam is None else str(lam))
    prop = all(x is not None for x in ratios) and len(set(ratios)) == 1 and ratios[0] != "0"
    report.info["f_over_J"] = ratios
    report.info["f_proportional_to_J"] = prop
    ts = type_split(dH, q.J[0])
    ff = None
    for r in range(3):
        w = wedge_square(two_form(q.f[r], q.m_norms))
        ff = w if ff is None else ff + w
    ff_ts = type_split(ff, q.J[0])
    a31 = ts.real_pair(3).components
    b31 = ff_ts.real_pair(3).components
    lam = proportionality(a31, b31)
    report.info["dh31_over_ff31"] = None if lam is None else str(lam)
    report.add(CheckResult(name="twotwo_dichotomy", passed=q.dim <= 4 or not pure22 or prop))
    return report


# --- eight-dimensional classification ---------------------------------------------------


class Table3Row(BaseModel):
    hkt: str
    qkt: str
    comment: str
    dim: int = 8
    quotient_dim: Optional[int] = None
    torsion_vanishes: Optional[bool] = None
    checks: dict[str, bool] = {}


def group_name(type_name: str, parent: Optional[str] = None) -> str:
    f, r = type_name[0], int(type_name[1:])
    if f == "A":
        if r == 1 and parent is not None and parent[0] in "BC":
            return "Sp(1)"
        return f"SU({r + 1})"
    if f == "B":
        return "Sp(2)" if r == 2 else f"SO({2 * r + 1})"
    if f == "C":
        return f"Sp({r})"
    if f == "D":
        return f"SO({2 * r})"
    return type_name


def _u1_power(m: int, lead: bool = False) -> str:
    if m == 0:
        return ""
    if m == 1:
        return "U(1)" if lead else "xU(1)"
    return f"x^{m}U(1)"


def _k_part_names(k: str, parent: str) -> tuple[list[str], int]:
    names, t = [], 0
    for part in k.split("+"):
        if part == "0":
            continue
        if part.startswith("u(1)"):
            t = int(part[5:]) if part.startswith("u(1)^") else 1
            continue
        count, name = (int(part[0]), part[1:]) if part[0].isdigit() else (1, part)
        names += [group_name(name, parent)] * count
    return names, t


def factor_name(row: Table2Row) -> str:
    g = group_name(row.g)
    semi, t = _k_part_names(row.k, row.g)
    if not semi and not t:
        if row.g == "A1" and row.m == 1:
            return "U(2)"
        return g + _u1_power(row.m)
    k = "x".join(semi + ([_u1_power(t, lead=True)] if t else []))
    if not t:
        return f"{{{g}/{k}}}" + _u1_power(row.m) if row.m else f"{g}/{k}"
    if row.m:
        return f"{{{g}{_u1_power(row.m)}}}/{k}"
    return f"{g}/{k}"


def wolf_name(type_name: str) -> str:
    f, r = type_name[0], int(type_name[1:])
    if f == "A":
        return "CP^2" if r == 2 else f"Gr2(C^{r + 1})"
    if f == "C" or type_name == "B2":
        return "S^4" if r == 2 else f"HP^{r - 1}"
    if f == "B":
        return f"Gr4(R^{2 * r + 1})"
    if f == "D":
        return f"Gr4(R^{2 * r})"
    return {
        "G2": "G2/SO(4)",
        "F4": "F4/Sp(3)Sp(1)",
        "E6": "E6/SU(6)Sp(1)",
        "E7": "E7/Spin(12)Sp(1)",
        "E8": "E8/E7Sp(1)",
    }[type_name]


def product_name(names: Sequence[str]) -> str:
    """SU(2) and U(1) factors pair into U(2); repeated factors get a power."""
    su2, u1 = names.count("SU(2)"), names.count("U(1)")
    u2 = min(su2, u1)
    rest = [n for n in names if n not in ("SU(2)", "U(1)")]
    rest += ["SU(2)"] * (su2 - u2) + ["U(1)"] * (u1 - u2) + ["U(2)"] * u2
    parts = []
    for n in dict.fromkeys(rest):
        c = rest.count(n)
        parts.append(n if c == 1 else f"{n}^{c}")
    return "x".join(parts) or "1"


def quotient_factors(q: QKTDecomposition) -> tuple[list[str], list[str]]:
    """Group factors of G and of K x U(2) for the quotient G / (K x U(2))."""
    g = q.algebra
    groups = [group_name(rs.algebra.name) for rs in g.simple_ideals] + ["U(1)"] * g.abelian_dim
    semi, t = _k_part_names(q.hkt.k_descriptor, None)
    return groups, semi + ["U(1)"] * t + ["U(2)"]


def quotient_label(q: QKTDecomposition, torsion_vanishes: bool) -> tuple[str, str]:
    """Name and kind of the quotient, read off its levels and group factors."""
    if q.levels == 0:
        return f"x^{q.dim}U(1)", "flat space"
    if torsion_vanishes and q.levels == 1:
        return wolf_name(q.emb.ld.levels[0].parent), "Wolf space"
    groups, k = quotient_factors(q)
    n = groups.count("SU(2)")
    if torsion_vanishes and k == ["U(2)"] and groups == ["SU(2)"] * n + ["U(1)"] * n:
        # U(2)^n over its diagonal is U(2)^(n-1), and U(2) = S^1 x S^3
        return ("S^1xS^3" if n == 2 else f"(S^1xS^3)^{n - 1}"), "new QK space"
    name = f"{product_name(groups)}/{product_name(k)}"
    return name, "new QK space" if torsion_vanishes else "QKT"


def _combinations(factors: list[Table2Row], budget: int, start: int = 0):
    yield []
    for x in range(start, len(factors)):
        if factors[x].d <= budget:
            for rest in _combinations(factors, budget - factors[x].d, x):
                yield [factors[x]] + rest


def dimension_eight_factors(max_rank: int = 4) -> list[Table2Row]:
    types = []
    for fam in "ABCDEFG":
        for r in range(1, max_rank + 1):
            try:
                t = AlgebraType(fam, r)
            except ValueError:
                continue
            if (fam == "C" and r == 2) or (fam == "D" and r == 3):
                continue
            types.append(t)
    out = []
    for t in types:
        out += [row for row in enumerate_table2(t) if row.d in (4, 8)]
    return out


def build_product(rows: Sequence[Table2Row], flat: int) -> tuple[LevelDecomposition, int, int]:
    """
    Levels over G_1 x ... x G_n x U(1)^flat following each row's peeling, the
    u(1) count absorbed into k and the u(1)'s appended to m.
    """
    g = ReductiveAlgebra.of(*[parse_algebra(r.g) for r in rows], abelian_dim=flat)
    ld = joyce_decompose(g, stop_level=[r.levels for r in rows])
    t = sum(_k_part_names(r.k, r.g)[1] for r in rows)
    return ld, t, sum(r.m for r in rows)


def _qkt_row(hkt_name: str, ld: LevelDecomposition, t: int, extra: int, search_cap: int) -> Table3Row:
    row = Table3Row(hkt=hkt_name, qkt="-", comment="-")
    try:
        triple = hypercomplex_triple(ld, extra, k_u1=t)
        row.checks["hkt"] = verify_hkt(ld, triple).passed
        emb = embed_u2(ld, k_u1=t, u1_append=extra, search_cap=search_cap)
        q = qkt_decompose(emb)
        report = verify_qkt(q)
    except (LevelCountMismatch, RationalizationFailed, NotInvariant) as e:
        logger.info("%s: no quotient (%s)", hkt_name, e)
        return row
    row.checks.update({c.name: c.passed for c in report.checks})
    row.quotient_dim = q.dim
    row.torsion_vanishes = bool(report.info["torsion_vanishes"])
    if not report.passed:
        return row
    row.qkt, row.comment = quotient_label(q, row.torsion_vanishes)
    return row


def enumerate_table3(max_rank: int = 4, search_cap: int = SEARCH_HEIGHT_CAP) -> list[Table3Row]:
    """Eight-dimensional products of table rows and flat factors, with their U(2) quotients."""
    factors = dimension_eight_factors(max_rank)
    rows = []
    for combo in _combinations(factors, 8):
        used = sum(r.d for r in combo)
        if (8 - used) % 4:
            continue
        flat = 8 - used
        names = [factor_name(r) for r in combo]
        if flat:
            names.append(f"x^{flat}U(1)")
        hkt_name = "x".join(names).replace("xx^", "x^")
        ld, t, extra = build_product(combo, flat)
        rows.append(_qkt_row(hkt_name, ld, t, extra, search_cap))
    logger.info("table3: %d rows", len(rows))
    return rows


def diagonal_u2_example() -> QKTDecomposition:
    """U(2) x U(2) over its diagonal U(2)."""
    ld = joyce_decompose(ReductiveAlgebra.of("A1", "A1"))
    return qkt_decompose(embed_u2(ld))
