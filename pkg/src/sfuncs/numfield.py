"""Exact arithmetic in K = Q[x]/(P) for a monic squarefree integer polynomial P.

Elements are stored as an integer coordinate vector in the power basis
1, x, ..., x**(d-1) together with a single positive denominator, kept
gcd-normalized.  That keeps ring operations in plain integer arithmetic
(one gcd per result) instead of per-coordinate fraction bookkeeping, which
matters once series of these things get multiplied a few million times.

P is required to be squarefree (nonzero discriminant) but not irreducible;
when P factors, K is a product ring and inversion of a zero divisor raises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import (
    DegreeZero,
    FieldMismatch,
    NotMonic,
    NotSquarefree,
    Zero,
    ZeroDivisor,
)
from .intutil import prime_factors

Scalar = Union[int, Fraction]


def _sylvester_resultant(p: Sequence[int], q: Sequence[int]) -> int:
    """Resultant of two integer polynomials (coefficients low to high).

    Computed as the determinant of the Sylvester matrix by fraction-free
    (Bareiss) elimination, so the result is an exact integer.
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    if size == 0:
        return 1
    rows: list[list[int]] = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, size):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[size - 1][size - 1]


def _derivative(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(i * c for i, c in enumerate(p) if i > 0)


def discriminant(minpoly: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial: (-1)**(d(d-1)/2) res(P, P')."""
    d = len(minpoly) - 1
    res = _sylvester_resultant(minpoly, _derivative(minpoly))
    return (-1) ** (d * (d - 1) // 2) * res


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(P), carrying the degree and discriminant of P.

    Build through make_field, which validates the polynomial.
    """

    minpoly: tuple[int, ...]
    degree: int
    discriminant: int

    @cached_property
    def _reduction(self) -> tuple[tuple[int, ...], ...]:
        """Coordinates of x**(d+j) for j = 0..d-2, used to fold products."""
        d = self.degree
        rows: list[tuple[int, ...]] = []
        if d >= 1:
            row = tuple(-c for c in self.minpoly[:d])
            for _ in range(d - 1):
                rows.append(row)
                top = row[d - 1]
                shifted = (0,) + row[: d - 1]
                row = tuple(shifted[i] + top * rows[0][i] for i in range(d))
        return tuple(rows)

    def elem(self, value: Scalar | Sequence[Scalar]) -> "FieldElem":
        """Element from a rational scalar or a coordinate sequence.

        >>> k = make_field([3, 0, 1])
        >>> k.elem([Fraction(1, 2), 3]).coords
        (Fraction(1, 2), Fraction(3, 1))
        """
        if isinstance(value, (int, Fraction)):
            value = [value] + [0] * (self.degree - 1)
        fracs = [Fraction(v) for v in value]
        if len(fracs) != self.degree:
            raise ValueError(
                f"need {self.degree} coordinates, got {len(fracs)}"
            )
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        nums = tuple(f.numerator * (den // f.denominator) for f in fracs)
        return FieldElem(self, nums, den)

    def zero(self) -> "FieldElem":
        return self.elem(0)

    def one(self) -> "FieldElem":
        return self.elem(1)

    def gen(self) -> "FieldElem":
        """The class of x."""
        if self.degree == 1:
            return self.elem(-self.minpoly[0])
        coords = [0] * self.degree
        coords[1] = 1
        return self.elem(coords)

    def __repr__(self) -> str:
        return f"NumberField({list(self.minpoly)})"


def make_field(minpoly: Iterable[int]) -> NumberField:
    """Validate a defining polynomial and build the field.

    Coefficients run from constant to leading term.

    >>> make_field([-1, -2, 1, 1]).discriminant
    49
    >>> make_field([3, 0, 1]).discriminant
    -12
    """
    coeffs = tuple(int(c) for c in minpoly)
    if len(coeffs) < 2:
        raise DegreeZero("defining polynomial must have degree at least 1")
    if coeffs[-1] != 1:
        raise NotMonic(f"leading coefficient is {coeffs[-1]}, need 1")
    disc = discriminant(coeffs)
    if disc == 0:
        raise NotSquarefree("defining polynomial has a repeated factor")
    return NumberField(minpoly=coeffs, degree=len(coeffs) - 1, discriminant=disc)


def rationals() -> NumberField:
    """The degree-1 field Q, defined by the polynomial x."""
    global _QQ
    if _QQ is None:
        _QQ = make_field([0, 1])
    return _QQ


_QQ: NumberField | None = None


@dataclass(frozen=True)
class FieldElem:
    """One element: integer coordinates nums over a shared denominator den."""

    field: NumberField
    nums: tuple[int, ...]
    den: int = 1

    def __post_init__(self) -> None:
        nums = tuple(int(n) for n in self.nums)
        den = int(self.den)
        if len(nums) != self.field.degree:
            raise ValueError("coordinate count does not match the field degree")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = tuple(-n for n in nums)
            den = -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        """Exact rational coordinates in the power basis."""
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return all(n == 0 for n in self.nums)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.elem(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return (
            self.field == other.field
            and self.nums == other.nums
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nums, self.den))

    def _coerce(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch("operands come from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem(other)
        return None

    def __add__(self, other) -> "FieldElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nums = tuple(
            a * o.den + b * self.den for a, b in zip(self.nums, o.nums)
        )
        return FieldElem(self.field, nums, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, tuple(-n for n in self.nums), self.den)

    def __sub__(self, other) -> "FieldElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nums = tuple(
            a * o.den - b * self.den for a, b in zip(self.nums, o.nums)
        )
        return FieldElem(self.field, nums, self.den * o.den)

    def __rsub__(self, other) -> "FieldElem":
        return (-self) + other

    def __mul__(self, other) -> "FieldElem":
        if isinstance(other, int):
            return FieldElem(
                self.field, tuple(n * other for n in self.nums), self.den
            )
        if isinstance(other, Fraction):
            return FieldElem(
                self.field,
                tuple(n * other.numerator for n in self.nums),
                self.den * other.denominator,
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.nums):
            if a:
                for j, b in enumerate(o.nums):
                    if b:
                        conv[i + j] += a * b
        if d > 1:
            red = self.field._reduction
            for j in range(2 * d - 2, d - 1, -1):
                c = conv[j]
                if c:
                    row = red[j - d]
                    for t in range(d):
                        conv[t] += c * row[t]
        return FieldElem(self.field, tuple(conv[:d]), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldElem":
        if isinstance(other, int):
            return FieldElem(self.field, self.nums, self.den * other)
        if isinstance(other, Fraction):
            return self * Fraction(other.denominator, other.numerator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * invert(o)

    def __rtruediv__(self, other) -> "FieldElem":
        return invert(self) * other

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return invert(self) ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"


def multiply(a: FieldElem, b: FieldElem) -> FieldElem:
    """Product in the field; operands must share the field."""
    if not isinstance(b, FieldElem) or not isinstance(a, FieldElem):
        raise TypeError("multiply takes two field elements")
    return a * b


def _poly_degree(p: list[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _poly_divmod(
    a: list[Fraction], b: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    da, db = _poly_degree(a), _poly_degree(b)
    q = [Fraction(0)] * (max(da - db, 0) + 1)
    r = list(a)
    inv_lead = 1 / b[db]
    for i in range(da - db, -1, -1):
        c = r[i + db] * inv_lead
        if c:
            q[i] = c
            for j in range(db + 1):
                r[i + j] -= c * b[j]
    return q, r[:db]


def invert(a: FieldElem) -> FieldElem:
    """Multiplicative inverse via the extended Euclidean algorithm in Q[x].

    Raises Zero on the zero element and ZeroDivisor when the coordinate
    polynomial shares a factor with the defining polynomial (possible only
    when that polynomial is reducible).

    >>> k = make_field([-1, -2, 1, 1])
    >>> invert(k.gen()).coords
    (Fraction(-2, 1), Fraction(1, 1), Fraction(1, 1))
    """
    if a.is_zero():
        raise Zero("cannot invert 0")
    field = a.field
    r0 = [Fraction(c) for c in field.minpoly]
    u0 = [Fraction(0)]
    r1 = [Fraction(n, a.den) for n in a.nums]
    u1 = [Fraction(1)]
    while _poly_degree(r1) > 0:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        # u_next = u0 - q*u1
        prod = [Fraction(0)] * (len(q) + len(u1))
        for i, qc in enumerate(q):
            if qc:
                for j, uc in enumerate(u1):
                    prod[i + j] += qc * uc
        nxt = [
            (u0[i] if i < len(u0) else Fraction(0)) - prod[i]
            for i in range(max(len(u0), len(prod)))
        ]
        u0, u1 = u1, nxt
        if _poly_degree(r1) < 0:
            raise ZeroDivisor(
                "element shares a factor with the defining polynomial"
            )
    c = r1[0]
    coords = [Fraction(0)] * field.degree
    for i in range(min(len(u1), field.degree)):
        coords[i] = u1[i] / c
    return field.elem(coords)


def denominator_support(a: FieldElem) -> set[int]:
    """Primes dividing any coordinate denominator of a.

    >>> k = make_field([3, 0, 1])
    >>> sorted(denominator_support(k.elem([Fraction(5, 12), 1])))
    [2, 3]
    """
    return set(prime_factors(a.den))
