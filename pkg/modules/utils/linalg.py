from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Optional, Sequence

import sympy

Vector = tuple[Fraction, ...]
InnerProduct = Callable[[Sequence[Fraction], Sequence[Fraction]], Fraction]


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zeros(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def combine(coeffs: Sequence, vectors: Sequence[Sequence[Fraction]]) -> Vector:
    """Linear combination sum(coeffs[i] * vectors[i])."""
    if not vectors:
        raise ValueError("empty combination")
    out = zeros(len(vectors[0]))
    for c, v in zip(coeffs, vectors):
        if c:
            out = add(out, scale(c, v))
    return out


def primitive(u: Sequence[Fraction]) -> Vector:
    """Rescale to a primitive integer vector whose first nonzero entry is positive."""
    if is_zero(u):
        return tuple(Fraction(0) for _ in u)
    den = lcm(*(Fraction(a).denominator for a in u))
    ints = [int(Fraction(a) * den) for a in u]
    g = 0
    for a in ints:
        g = gcd(g, a)
    first = next(a for a in ints if a != 0)
    sign = 1 if first > 0 else -1
    return tuple(Fraction(sign * a // g) for a in ints)


def project_out(
    u: Sequence[Fraction],
    basis: Sequence[Sequence[Fraction]],
    inner: InnerProduct = dot,
) -> Vector:
    """Remove from u its components along an orthogonal basis."""
    out = tuple(u)
    for b in basis:
        nb = inner(b, b)
        c = inner(out, b) / nb
        if c:
            out = sub(out, scale(c, b))
    return out


def gram_schmidt(
    vectors: Iterable[Sequence[Fraction]],
    inner: InnerProduct = dot,
    start: Optional[Sequence[Sequence[Fraction]]] = None,
    make_primitive: bool = True,
) -> list[Vector]:
    """
    Rational Gram-Schmidt without normalization.

    Vectors dependent on the ones already accepted (including `start`) are
    skipped. `start` need not be orthogonal; it is orthogonalized first and
    only the newly produced vectors are returned.
    """
    accepted: list[Vector] = []
    for b in start or []:
        r = project_out(b, accepted, inner)
        if not is_zero(r):
            accepted.append(r)
    produced = []
    for v in vectors:
        r = project_out(v, accepted, inner)
        if is_zero(r):
            continue
        if make_primitive:
            r = primitive(r)
        accepted.append(r)
        produced.append(r)
    return produced


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in v] for v in vectors]).rank()


def solve_coordinates(
    target: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]
) -> Optional[Vector]:
    """Coordinates x with sum(x_i basis_i) == target, or None if not in the span."""
    if not basis:
        return () if is_zero(target) else None
    m = sympy.Matrix(
        [[sympy.Rational(b[i].numerator, b[i].denominator) for b in basis] for i in range(len(target))]
    )
    rhs = sympy.Matrix([sympy.Rational(Fraction(t).numerator, Fraction(t).denominator) for t in target])
    try:
        sol, params = m.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    return tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in sol)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    return int(sympy.Matrix(rows).det())
