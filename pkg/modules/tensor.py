"""
Exact multilinear algebra on the isotropy complement m of a reductive split
g = m + k: endomorphisms, the Nijenhuis tensor, torsion and dH forms, (p,q)
type projections and hermiticity.
"""

import logging
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Optional, Sequence

from modules.chevalley import AdaptedBasis, Coeff
from modules.surd import SurdScalar
from modules.utils.report import CheckResult, Scan

logger = logging.getLogger(__name__)

SparseVector = dict


class NotAlmostComplex(ValueError):
    pass


class NotAntisymmetric(ValueError):
    pass


def _clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c}


def vadd(*vs: dict) -> dict:
    out: dict = {}
    for v in vs:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return _clean(out)


def vscale(c, v: dict) -> dict:
    if not c:
        return {}
    return _clean({k: c * x for k, x in v.items()})


# --- split algebra ------------------------------------------------------------------


class SplitAlgebra:
    """
    A B-orthogonal basis of g whose first entries span m and the rest span k.

    m-local indices run over 0..dim_m-1; k-local over 0..dim_k-1.
    """

    def __init__(self, basis: AdaptedBasis, m_indices: Sequence[int], k_indices: Sequence[int]):
        self.basis = basis
        self.m_indices = list(m_indices)
        self.k_indices = list(k_indices)
        self._m_pos = {g: i for i, g in enumerate(self.m_indices)}
        self._k_pos = {g: i for i, g in enumerate(self.k_indices)}

    @property
    def dim_m(self) -> int:
        return len(self.m_indices)

    @property
    def dim_k(self) -> int:
        return len(self.k_indices)

    @property
    def m_norms(self) -> list:
        return [self.basis.norms[g] for g in self.m_indices]

    @property
    def k_norms(self) -> list:
        return [self.basis.norms[g] for g in self.k_indices]

    @property
    def m_labels(self) -> list[str]:
        return [self.basis.labels[g] for g in self.m_indices]

    def _split(self, full: dict) -> tuple[dict, dict]:
        m, k = {}, {}
        for g, c in full.items():
            if g in self._m_pos:
                m[self._m_pos[g]] = c
            else:
                k[self._k_pos[g]] = c
        return m, k

    def bracket_mm(self, i: int, j: int) -> tuple[dict, dict]:
        """([e_i, e_j]_m, [e_i, e_j]_k) for m-local i, j."""
        return self._split(self.basis.structure(self.m_indices[i], self.m_indices[j]))

    def bracket_km(self, a: int, i: int) -> dict:
        """[k_a, e_i] in m-local coordinates (reductivity is checked by the caller)."""
        m, k = self._split(self.basis.structure(self.k_indices[a], self.m_indices[i]))
        if k:
            raise ValueError(f"[k, m] has a k-component at k={a}, m={i}")
        return m

    def bracket_m(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                m, _ = self.bracket_mm(i, j)
                for k, c in m.items():
                    out[k] = out.get(k, 0) + a * b * c
        return _clean(out)

    def lowered_m(self, i: int, j: int, k: int):
        """f_ijk with all three indices in m."""
        m, _ = self.bracket_mm(i, j)
        return m.get(k, 0) * self.basis.norms[self.m_indices[k]]


# --- endomorphisms ------------------------------------------------------------------


class Endomorphism:
    """Square matrix stored by columns: columns[j] is the image of basis vector j."""

    def __init__(self, dim: int, columns: Optional[Sequence[dict]] = None, labels: Optional[Sequence[str]] = None):
        self.dim = dim
        cols = [dict() for _ in range(dim)] if columns is None else [_clean(dict(c)) for c in columns]
        if len(cols) != dim:
            raise ValueError(f"expected {dim} columns, got {len(cols)}")
        self.columns = cols
        self.labels = list(labels) if labels is not None else None

    @classmethod
    def identity(cls, dim: int) -> "Endomorphism":
        return cls(dim, [{j: Fraction(1)} for j in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> "Endomorphism":
        return cls(dim)

    def entry(self, i: int, j: int):
        return self.columns[j].get(i, 0)

    def set_column(self, j: int, image: dict):
        self.columns[j] = _clean(dict(image))

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, c in v.items():
            for i, x in self.columns[j].items():
                out[i] = out.get(i, 0) + c * x
        return _clean(out)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other."""
        return Endomorphism(self.dim, [self.apply(col) for col in other.columns], self.labels)

    __matmul__ = compose

    def __add__(self, other: "Endomorphism") -> "Endomorphism":
        return Endomorphism(self.dim, [vadd(a, b) for a, b in zip(self.columns, other.columns)], self.labels)

    def __sub__(self, other: "Endomorphism") -> "Endomorphism":
        return self + other.scaled(-1)

    def __neg__(self) -> "Endomorphism":
        return self.scaled(-1)

    def scaled(self, c) -> "Endomorphism":
        return Endomorphism(self.dim, [vscale(c, col) for col in self.columns], self.labels)

    def commutator(self, other: "Endomorphism") -> "Endomorphism":
        return self.compose(other) - other.compose(self)

    def is_zero(self) -> bool:
        return all(not col for col in self.columns)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.dim == other.dim and (self - other).is_zero()

    def first_difference(self, other: "Endomorphism") -> Optional[tuple[int, int]]:
        diff = self - other
        for j, col in enumerate(diff.columns):
            if col:
                return (min(col), j)
        return None

    def square_is_minus_identity(self) -> bool:
        return self.compose(self) == Endomorphism.identity(self.dim).scaled(-1)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [[i, j, str(c)] for j, col in enumerate(self.columns) for i, c in sorted(col.items())],
        }


def _require_complex(I: Endomorphism):
    if not I.square_is_minus_identity():
        w = I.compose(I).first_difference(Endomorphism.identity(I.dim).scaled(-1))
        raise NotAlmostComplex(f"I^2 != -1 (first differing entry {w})")


# --- Nijenhuis tensor ---------------------------------------------------------------


class NijenhuisTensor:
    def __init__(self, values: dict[tuple[int, int], dict], checked: int):
        self.values = values
        self.checked = checked

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def witness(self) -> Optional[tuple[int, int]]:
        return min(self.values) if self.values else None

    def __call__(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.values.get((i, j), {})
        return vscale(-1, self.values.get((j, i), {}))

    def result(self, name: str = "nijenhuis") -> CheckResult:
        w = self.witness
        return CheckResult(name=name, passed=self.is_zero, checked=self.checked, witness=list(w) if w else None)


def nijenhuis(I: Endomorphism, split: SplitAlgebra) -> NijenhuisTensor:
    """N(X,Y) = [IX,IY]_m - [X,Y]_m - I[IX,Y]_m - I[X,IY]_m on all basis pairs."""
    _require_complex(I)
    n = split.dim_m
    values = {}
    for a in range(n):
        ia = I.columns[a]
        ea = {a: 1}
        for b in range(a + 1, n):
            ib = I.columns[b]
            eb = {b: 1}
            t1 = split.bracket_m(ia, ib)
            t2 = split.bracket_m(ea, eb)
            t3 = I.apply(split.bracket_m(ia, eb))
            t4 = I.apply(split.bracket_m(ea, ib))
            val = vadd(t1, vscale(-1, t2), vscale(-1, t3), vscale(-1, t4))
            if val:
                values[(a, b)] = val
    logger.debug("nijenhuis: %d nonzero pairs of %d", len(values), n * (n - 1) // 2)
    return NijenhuisTensor(values, n * (n - 1) // 2)


def invariance(I: Endomorphism, split: SplitAlgebra) -> CheckResult:
    """I([Z, X]_m) = [Z, I X]_m for every k-basis Z and m-basis X."""
    scan = Scan("invariance")
    for a in range(split.dim_k):
        ad = Endomorphism(split.dim_m, [split.bracket_km(a, i) for i in range(split.dim_m)])
        lhs, rhs = I.compose(ad), ad.compose(I)
        scan.ok(lhs == rhs, [a, *(lhs.first_difference(rhs) or ())])
    return scan.result()


# --- alternating forms ----------------------------------------------------------------


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    for i in range(len(idx) - 1):
        if idx[i] == idx[i + 1]:
            return 0, tuple(idx)
    return sign, tuple(idx)


class AltForm:
    def __init__(self, degree: int, dim: int, components: Optional[dict] = None):
        self.degree = degree
        self.dim = dim
        self.components: dict[tuple[int, ...], Coeff] = {}
        for idx, v in (components or {}).items():
            self.accumulate(idx, v)

    def accumulate(self, idx: Sequence[int], value):
        sign, key = _sort_sign(idx)
        if sign == 0 or not value:
            return
        new = self.components.get(key, 0) + sign * value
        if new:
            self.components[key] = new
        else:
            self.components.pop(key, None)

    def get(self, idx: Sequence[int]):
        sign, key = _sort_sign(idx)
        if sign == 0:
            return 0
        v = self.components.get(key, 0)
        return sign * v if v else 0

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "AltForm") -> "AltForm":
        out = AltForm(self.degree, self.dim, self.components)
        for k, v in other.components.items():
            out.accumulate(k, v)
        return out

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + other.scaled(-1)

    def scaled(self, c) -> "AltForm":
        out = AltForm(self.degree, self.dim)
        if c:
            out.components = _clean({k: c * v for k, v in self.components.items()})
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AltForm):
            return NotImplemented
        return (self - other).is_zero()

    def nonzero(self) -> list[tuple[tuple[int, ...], Coeff]]:
        return sorted(self.components.items())

    def to_json(self) -> list[dict]:
        return [{"indices": list(k), "value": str(v)} for k, v in self.nonzero()]


def torsion_form(split: SplitAlgebra) -> AltForm:
    """H_lmn = -f_lmn on m, after checking total antisymmetry of the lowered constants."""
    n = split.dim_m
    H = AltForm(3, n)
    for l in range(n):
        for m in range(n):
            if l == m:
                continue
            brk, _ = split.bracket_mm(l, m)
            for k, c in brk.items():
                f_lmk = c * split.basis.norms[split.m_indices[k]]
                if k in (l, m):
                    raise NotAntisymmetric(f"f[{l},{m},{k}] = {f_lmk} has a repeated index")
                cyclic = split.lowered_m(m, k, l)
                if cyclic != f_lmk:
                    raise NotAntisymmetric(f"f[{l},{m},{k}] = {f_lmk} but f[{m},{k},{l}] = {cyclic}")
                if l < m < k:
                    H.components[(l, m, k)] = -f_lmk
    return H


DH_FACTOR = Fraction(-3, 2)


def _pair_sum(split: SplitAlgebra, l: int, m: int, n: int, o: int, part: int) -> Coeff:
    """sum_P B_PP f_lm^P f_no^P over the k-part (part=1) or the m-part (part=0)."""
    x = split.bracket_mm(l, m)[part]
    y = split.bracket_mm(n, o)[part]
    if not x or not y:
        return 0
    norms = split.k_norms if part else split.m_norms
    total = 0
    for p, c in x.items():
        d = y.get(p)
        if d:
            total = total + norms[p] * c * d
    return total


def _three_pairings(split: SplitAlgebra, q: tuple[int, int, int, int], part: int):
    l, m, n, o = q
    return _pair_sum(split, l, m, n, o, part) + _pair_sum(split, l, n, o, m, part) + _pair_sum(split, l, o, m, n, part)


def dh_form(split: SplitAlgebra, factor: Fraction = DH_FACTOR) -> AltForm:
    """
    (dH)_lmno = factor * A(f_lm^a f_noa), A the normalized antisymmetrizer, a over k.

    f_lm^a f_noa is antisymmetric in each pair and symmetric under pair exchange,
    so A reduces to one third of the sum over the three pairings.
    """
    n = split.dim_m
    out = AltForm(4, n)
    if split.dim_k == 0:
        return out
    # only quadruples with two pairs meeting in the same k-direction contribute
    by_k: dict[int, list[tuple[int, int]]] = {}
    for l in range(n):
        for m in range(l + 1, n):
            for a in split.bracket_mm(l, m)[1]:
                by_k.setdefault(a, []).append((l, m))
    candidates = set()
    for pairs in by_k.values():
        for x in range(len(pairs)):
            for y in range(x + 1, len(pairs)):
                q = set(pairs[x]) | set(pairs[y])
                if len(q) == 4:
                    candidates.add(tuple(sorted(q)))
    for q in sorted(candidates):
        val = _three_pairings(split, q, 1)
        if val:
            out.components[q] = factor * val / 3
    return out


def jacobi_contraction(split: SplitAlgebra, quadruples: Optional[Iterable[tuple]] = None) -> CheckResult:
    """f_[lm^P f_no]P summed over all of g vanishes for every quadruple of m-indices."""
    scan = Scan("jacobi_contraction")
    if quadruples is None:
        quadruples = combinations(range(split.dim_m), 4)
    for q in quadruples:
        total = _three_pairings(split, q, 0) + _three_pairings(split, q, 1)
        scan.ok(total == 0, list(q))
    return scan.result()


# --- (p,q) types --------------------------------------------------------------------


def _rows(I: Endomorphism) -> list[list[tuple[int, Coeff]]]:
    """rows[j] lists (i, I_ji): the basis vectors whose image has a j-component."""
    rows = [[] for _ in range(I.dim)]
    for i, col in enumerate(I.columns):
        for j, c in col.items():
            rows[j].append((i, c))
    return rows


def slot_sum(omega: AltForm, I: Endomorphism, t: int) -> AltForm:
    """S_t(omega)(v_1..v_k) = sum over t-subsets T of omega with I applied to the slots in T."""
    k = omega.degree
    out = AltForm(k, omega.dim)
    if t == 0:
        out.components = dict(omega.components)
        return out
    rows = _rows(I)
    acc: dict = {}
    slot_sets = list(combinations(range(k), t))
    for key, value in omega.components.items():
        for perm in permutations(range(k)):
            sign, _ = _sort_sign(perm)
            ordered = tuple(key[p] for p in perm)
            for T in slot_sets:
                partial = [((), sign * value)]
                for slot in range(k):
                    j = ordered[slot]
                    nxt = []
                    if slot in T:
                        for idx, c in partial:
                            for i, x in rows[j]:
                                nxt.append((idx + (i,), c * x))
                    else:
                        nxt = [(idx + (j,), c) for idx, c in partial]
                    partial = nxt
                for idx, c in partial:
                    if all(idx[s] < idx[s + 1] for s in range(k - 1)):
                        acc[idx] = acc.get(idx, 0) + c
    out.components = _clean(acc)
    return out


def krawtchouk(k: int, t: int, p: int) -> int:
    return sum(comb(t, a) * comb(k - t, p - a) * (-1) ** (t - a) for a in range(0, min(t, p) + 1))


class TypeSplit:
    """omega^(p,q) for p+q = degree, each stored as (real part, imaginary part)."""

    def __init__(self, degree: int, components: dict[tuple[int, int], tuple[AltForm, AltForm]]):
        self.degree = degree
        self.components = components

    def part(self, p: int) -> tuple[AltForm, AltForm]:
        return self.components[(p, self.degree - p)]

    def real_pair(self, p: int) -> AltForm:
        """omega^(p,q) + omega^(q,p), a real form."""
        q = self.degree - p
        re, _ = self.part(p)
        if p == q:
            return re
        re2, _ = self.part(q)
        return re + re2

    def vanishes(self, p: int) -> bool:
        re, im = self.part(p)
        return re.is_zero() and im.is_zero()

    def reconstruct(self) -> tuple[AltForm, AltForm]:
        re = im = None
        for (p, _), (a, b) in sorted(self.components.items()):
            re = a if re is None else re + a
            im = b if im is None else im + b
        return re, im

    def to_json(self) -> dict:
        return {
            f"({p},{q})": {"re": a.to_json(), "im": b.to_json()} for (p, q), (a, b) in sorted(self.components.items())
        }


def type_split(omega: AltForm, I: Endomorphism) -> TypeSplit:
    _require_complex(I)
    k = omega.degree
    S = [slot_sum(omega, I, t) for t in range(k + 1)]
    parts = {}
    for p in range(k + 1):
        re = AltForm(k, omega.dim)
        im = AltForm(k, omega.dim)
        for t in range(k + 1):
            K = krawtchouk(k, t, p)
            if not K:
                continue
            coeff = Fraction(K, 2**k)
            # (-i)^t
            if t % 2 == 0:
                re = re + S[t].scaled(coeff * (-1) ** (t // 2))
            else:
                im = im + S[t].scaled(coeff * (-1) ** ((t + 1) // 2))
        parts[(p, k - p)] = (re, im)
    return TypeSplit(k, parts)


def pure_part(omega: AltForm, I: Endomorphism) -> AltForm:
    """(3,0)+(0,3) part of a 3-form: (S_0 - S_2)/4."""
    if omega.degree != 3:
        raise ValueError("pure_part expects a 3-form")
    _require_complex(I)
    return (omega - slot_sum(omega, I, 2)).scaled(Fraction(1, 4))


def torsion_type(H: AltForm, I: Endomorphism, name: str = "torsion_type") -> CheckResult:
    pure = pure_part(H, I)
    w = pure.nonzero()[0][0] if not pure.is_zero() else None
    return CheckResult(name=name, passed=pure.is_zero(), checked=len(H.components), witness=list(w) if w else None)


# --- hermiticity ----------------------------------------------------------------------


def hermitian(norms: Sequence, I: Endomorphism, name: str = "hermitian") -> CheckResult:
    """B(Ie_i, Ie_j) = B(e_i, e_j) for a diagonal B given by its norms."""
    _require_complex(I)
    n = I.dim
    rows = _rows(I)
    gram: dict[tuple[int, int], Coeff] = {}
    for k in range(n):
        entries = rows[k]
        for x in range(len(entries)):
            i, a = entries[x]
            for y in range(x, len(entries)):
                j, b = entries[y]
                key = (min(i, j), max(i, j))
                gram[key] = gram.get(key, 0) + norms[k] * a * b
    scan = Scan(name)
    for i in range(n):
        scan.ok(gram.get((i, i), 0) == norms[i], [i, i])
    for (i, j), v in sorted(gram.items()):
        if i != j:
            scan.ok(v == 0, [i, j])
    return scan.result()


# --- proportionality ---------------------------------------------------------------------


def proportionality(a: dict, b: dict) -> Optional[Coeff]:
    """lambda with a = lambda * b entrywise (a, b sparse), or None; zero b only matches zero a."""
    a, b = _clean(a), _clean(b)
    if not b:
        return 0 if not a else None
    if set(a) - set(b):
        return None
    key = min(b)
    pivot = b[key]
    if isinstance(pivot, SurdScalar) and not pivot.is_monomial():
        return None
    lam = a.get(key, 0) / pivot
    for k, v in b.items():
        if a.get(k, 0) != lam * v:
            return None
    return lam


def endomorphism_entries(E: Endomorphism) -> dict:
    return {(i, j): c for j, col in enumerate(E.columns) for i, c in col.items()}
