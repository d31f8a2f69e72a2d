"""
Exact real numbers of the form sum q_n * sqrt(n) with rational q_n and
distinct squarefree n.

Normalized u(1) generators and norm-matched complex structures need square
roots of rationals; everything else in the engine stays in Fraction.
"""

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import sympy


class SurdDivisionError(ArithmeticError):
    pass


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """n = s**2 * f with f squarefree; returns (s, f)."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, f = 1, 1
    for p, e in sympy.factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


Scalar = Union["SurdScalar", Fraction, int]


class SurdScalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for n, q in (terms or {}).items():
            q = Fraction(q)
            if q:
                clean[n] = clean.get(n, Fraction(0)) + q
        self._terms = tuple(sorted((n, q) for n, q in clean.items() if q))
        self._hash = None

    @classmethod
    def rational(cls, q) -> "SurdScalar":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q) -> "SurdScalar":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        if q == 0:
            return ZERO
        # sqrt(a/b) = sqrt(a*b)/b
        s, f = squarefree_split(q.numerator * q.denominator)
        return cls({f: Fraction(s, q.denominator)})

    @classmethod
    def coerce(cls, x: Scalar) -> "SurdScalar":
        if isinstance(x, SurdScalar):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to SurdScalar")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(n == 1 for n, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def __float__(self) -> float:
        return sum(float(q) * float(n) ** 0.5 for n, q in self._terms)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_monomial():
            return 1 if self._terms[0][1] > 0 else -1
        # exact sign via sympy for the rare multi-term case
        expr = sum(sympy.Rational(q.numerator, q.denominator) * sympy.sqrt(n) for n, q in self._terms)
        return 1 if expr > 0 else -1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> "SurdScalar":
        return SurdScalar({n: -q for n, q in self._terms})

    def __add__(self, other: Scalar) -> "SurdScalar":
        try:
            other = SurdScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for n, q in other._terms:
            out[n] = out.get(n, Fraction(0)) + q
        return SurdScalar(out)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "SurdScalar":
        try:
            return self + (-SurdScalar.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Scalar) -> "SurdScalar":
        return SurdScalar.coerce(other) - self

    def __mul__(self, other: Scalar) -> "SurdScalar":
        if isinstance(other, (int, Fraction)):
            return SurdScalar({n: q * other for n, q in self._terms})
        try:
            other = SurdScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for m, a in self._terms:
            for n, b in other._terms:
                s, f = squarefree_split(m * n)
                out[f] = out.get(f, Fraction(0)) + a * b * s
        return SurdScalar(out)

    __rmul__ = __mul__

    def inverse(self) -> "SurdScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero surd")
        if not self.is_monomial():
            raise SurdDivisionError(f"cannot invert multi-term surd {self}")
        n, q = self._terms[0]
        # 1/(q sqrt n) = sqrt(n)/(q n)
        return SurdScalar({n: 1 / (q * n)})

    def __truediv__(self, other: Scalar) -> "SurdScalar":
        if isinstance(other, (int, Fraction)):
            return SurdScalar({n: q / other for n, q in self._terms})
        try:
            other = SurdScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "SurdScalar":
        return SurdScalar.coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SurdScalar.rational(other)
        if not isinstance(other, SurdScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, q in self._terms:
            if n == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"sqrt({n})")
            elif q == -1:
                parts.append(f"-sqrt({n})")
            else:
                parts.append(f"{q}*sqrt({n})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SurdScalar({self})"


ZERO = SurdScalar()
ONE = SurdScalar.rational(1)


def as_surd(x: Scalar) -> SurdScalar:
    return SurdScalar.coerce(x)
