"""Exact scalar arithmetic for the distance-set pipeline.

Two scalar kinds appear throughout: arbitrary-precision rationals and
elements of multiquadratic extensions of the rationals, i.e. finite sums
``c_1*sqrt(r_1) + c_2*sqrt(r_2) + ...`` with rational coefficients and
squarefree integer radicands.  Rationals are plain
:class:`fractions.Fraction`; :class:`QuadNum` adds the radical layer with
exact equality, exact sign determination, and quadratic-equation solving.

No floating point feeds any decision anywhere; ``float(q)`` exists only as
a sanity cross-check for tests.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

Scalar = Union[int, Fraction, "QuadNum"]


class NegativeRadicand(ArithmeticError):
    """Square root of a negative rational was requested."""


class NegativeDiscriminant(ArithmeticError):
    """The quadratic has no real roots."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n >= 1`` as ``s*s*f`` with ``f`` squarefree; return ``(s, f)``.

    Trial division; radicands in this domain stay small (products of a few
    values bounded by ~2n^2).
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    square, free = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            square *= d ** (e // 2)
            if e % 2:
                free *= d
        d += 1 if d == 2 else 2
    return square, free * n


class QuadNum:
    """A sum of rational multiples of square roots of squarefree integers.

    Radicand 1 carries the rational part.  Distinct squarefree radicands
    are linearly independent over the rationals, so two values are equal
    exactly when their term mappings are identical, and a value is zero
    exactly when it has no terms.  Instances are immutable and hashable;
    a purely rational QuadNum hashes like the equal Fraction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for rad, coeff in items:
            if rad < 0:
                raise NegativeRadicand(f"negative radicand {rad}")
            coeff = Fraction(coeff)
            if rad == 0 or coeff == 0:
                continue
            s, f = squarefree_decompose(rad)
            val = acc.get(f, Fraction(0)) + coeff * s
            if val:
                acc[f] = val
            elif f in acc:
                del acc[f]
        object.__setattr__(self, "_terms", tuple(sorted(acc.items())))

    @staticmethod
    def of(value: Scalar) -> "QuadNum":
        if isinstance(value, QuadNum):
            return value
        return QuadNum({1: Fraction(value)})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def is_rational(self) -> bool:
        return all(rad == 1 for rad, _ in self._terms)

    def as_fraction(self) -> Fraction:
        """The exact rational value; raises if an irrational term remains."""
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1]

    # -- ring operations -------------------------------------------------

    def __add__(self, other: Scalar) -> "QuadNum":
        other = QuadNum.of(other)
        acc = dict(self._terms)
        for rad, coeff in other._terms:
            acc[rad] = acc.get(rad, Fraction(0)) + coeff
        return QuadNum(acc)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum({rad: -coeff for rad, coeff in self._terms})

    def __sub__(self, other: Scalar) -> "QuadNum":
        return self + (-QuadNum.of(other))

    def __rsub__(self, other: Scalar) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "QuadNum":
        other = QuadNum.of(other)
        acc: dict[int, Fraction] = {}
        for r1, c1 in self._terms:
            for r2, c2 in other._terms:
                g = math.gcd(r1, r2)
                rad = (r1 // g) * (r2 // g)
                acc[rad] = acc.get(rad, Fraction(0)) + c1 * c2 * g
        return QuadNum(acc)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "QuadNum":
        if isinstance(other, QuadNum):
            other = other.as_fraction()
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, exponent: int) -> "QuadNum":
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        out = QuadNum.of(1)
        for _ in range(exponent):
            out = out * self
        return out

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadNum.of(other)
        if not isinstance(other, QuadNum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_fraction())
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sign(self) -> int:
        """Exact sign via interval refinement of the radicals.

        A nonzero QuadNum has a nonzero real value (distinct squarefree
        radicals are linearly independent over the rationals), so the
        refinement always terminates.
        """
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            return 1 if self._terms[0][1] > 0 else -1
        prec = 16
        while True:
            lo = hi = Fraction(0)
            scale = 1 << prec
            for rad, coeff in self._terms:
                s = math.isqrt(rad * scale * scale)
                root_lo = Fraction(s, scale)
                root_hi = Fraction(s + 1, scale)
                if coeff >= 0:
                    lo += coeff * root_lo
                    hi += coeff * root_hi
                else:
                    lo += coeff * root_hi
                    hi += coeff * root_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other: Scalar) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Scalar) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Scalar) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Scalar) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return sum(float(coeff) * math.sqrt(rad) for rad, coeff in self._terms)

    def __str__(self) -> str:
        return format_quad(self)

    def __repr__(self) -> str:
        return f"QuadNum({format_quad(self)!r})"


def sqrt_rational(r: object) -> QuadNum:
    """Exact positive square root of a non-negative rational."""
    r = Fraction(r)
    if r < 0:
        raise NegativeRadicand(f"cannot take a real square root of {r}")
    if r == 0:
        return QuadNum()
    s, f = squarefree_decompose(r.numerator * r.denominator)
    return QuadNum({f: Fraction(s, r.denominator)})


def solve_quadratic(a: object, b: object, c: object) -> tuple[QuadNum, QuadNum]:
    """Both exact roots of ``a*x^2 + b*x + c = 0``, minus-branch first."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    disc = b * b - 4 * a * c
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc} < 0")
    root = sqrt_rational(disc)
    scale = Fraction(1, 2 * a)
    return (QuadNum.of(-b) - root) * scale, (QuadNum.of(-b) + root) * scale


# -- serialization -------------------------------------------------------
#
# Rationals print as "p/q" with "/q" omitted for integers (the native
# Fraction format).  QuadNums print as "+"-joined terms "c*sqrt(r)" with a
# bare "c" for radicand 1; term order is ascending radicand.  Both formats
# round-trip bit-exactly.

_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?$")


def format_rational(value: object) -> str:
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def format_quad(value: Scalar) -> str:
    q = QuadNum.of(value)
    if not q.terms:
        return "0"
    parts = []
    for rad, coeff in q.terms:
        parts.append(str(coeff) if rad == 1 else f"{coeff}*sqrt({rad})")
    return "+".join(parts)


def parse_quad(text: str) -> QuadNum:
    text = text.strip()
    if text == "0":
        return QuadNum()
    terms = []
    for part in text.split("+"):
        match = _TERM_RE.match(part.strip())
        if not match:
            raise ValueError(f"cannot parse scalar term {part!r}")
        coeff = Fraction(match.group(1))
        rad = int(match.group(2)) if match.group(2) else 1
        terms.append((rad, coeff))
    return QuadNum(terms)
