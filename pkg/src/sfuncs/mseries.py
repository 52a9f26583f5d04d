"""Multivariate truncated series: total-degree truncation, sparse storage.

Terms are kept as a sorted tuple of (exponent vector, coefficient) pairs so
instances are canonical, hashable and cheap to compare.  Binary operations
truncate to the smaller total-degree order.  The zero exponent vector (a
constant term) is representable; verification code insists it vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Mapping, Sequence, Union

from .errors import (
    BadConstantTerm,
    BadLinearPart,
    DimensionMismatch,
    FieldMismatch,
    InnerHasConstant,
    NonUnitConstant,
)
from .numfield import FieldElem, NumberField, invert
from .series import Series

Coeff = Union[int, Fraction, FieldElem]
ExpVec = tuple[int, ...]


@dataclass(frozen=True)
class MSeries:
    field: NumberField
    nvars: int
    order: int
    terms: tuple[tuple[ExpVec, FieldElem], ...]

    @classmethod
    def from_dict(
        cls,
        field: NumberField,
        nvars: int,
        order: int,
        coeffs: Mapping[ExpVec, Coeff],
    ) -> "MSeries":
        """Build from an exponent-vector map; zeros and out-of-range terms drop."""
        if nvars < 1:
            raise DimensionMismatch("need at least one variable")
        terms = []
        for key, val in coeffs.items():
            key = tuple(int(k) for k in key)
            if len(key) != nvars:
                raise DimensionMismatch(
                    f"exponent vector {key} does not have {nvars} entries"
                )
            if any(k < 0 for k in key):
                raise ValueError(f"negative exponent in {key}")
            if sum(key) > order:
                continue
            elem = val if isinstance(val, FieldElem) else field.elem(val)
            if elem.field != field:
                raise FieldMismatch("coefficient from a different field")
            if not elem.is_zero():
                terms.append((key, elem))
        terms.sort(key=lambda t: t[0])
        return cls(field, nvars, order, tuple(terms))

    @classmethod
    def zero(cls, field: NumberField, nvars: int, order: int) -> "MSeries":
        return cls.from_dict(field, nvars, order, {})

    @classmethod
    def var(cls, field: NumberField, nvars: int, order: int, i: int) -> "MSeries":
        """The coordinate series z_i (zero-based index)."""
        key = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.from_dict(field, nvars, order, {key: 1})

    @cached_property
    def as_dict(self) -> dict[ExpVec, FieldElem]:
        return dict(self.terms)

    def coeff(self, key: Sequence[int]) -> FieldElem:
        key = tuple(int(k) for k in key)
        if sum(key) > self.order:
            raise ValueError(f"{key} is outside the truncation order {self.order}")
        return self.as_dict.get(key, self.field.zero())

    @property
    def constant_term(self) -> FieldElem:
        return self.coeff((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MSeries") -> None:
        if other.field != self.field:
            raise FieldMismatch("series over different fields")
        if other.nvars != self.nvars:
            raise DimensionMismatch("series in different variable counts")

    def __add__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction, FieldElem)):
            other = MSeries.from_dict(
                self.field, self.nvars, self.order, {(0,) * self.nvars: other}
            )
        if not isinstance(other, MSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        acc: dict[ExpVec, FieldElem] = dict(
            (k, c) for k, c in self.terms if sum(k) <= order
        )
        for k, c in other.terms:
            if sum(k) <= order:
                acc[k] = acc[k] + c if k in acc else c
        return MSeries.from_dict(self.field, self.nvars, order, acc)

    __radd__ = __add__

    def __neg__(self) -> "MSeries":
        return MSeries(
            self.field,
            self.nvars,
            self.order,
            tuple((k, -c) for k, c in self.terms),
        )

    def __sub__(self, other) -> "MSeries":
        if isinstance(other, MSeries):
            return self + (-other)
        if isinstance(other, (int, Fraction, FieldElem)):
            neg = -other if isinstance(other, FieldElem) else -self.field.elem(other)
            return self + neg
        return NotImplemented

    def __rsub__(self, other) -> "MSeries":
        return (-self) + other

    def __mul__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction, FieldElem)):
            c = other if isinstance(other, FieldElem) else self.field.elem(other)
            return MSeries.from_dict(
                self.field,
                self.nvars,
                self.order,
                {k: v * c for k, v in self.terms},
            )
        if not isinstance(other, MSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        # accumulate raw coordinates; one normalization per output term
        acc: dict[ExpVec, tuple[list[int], int]] = {}
        for k1, c1 in self.terms:
            d1 = sum(k1)
            if d1 > order:
                continue
            for k2, c2 in other.terms:
                if d1 + sum(k2) > order:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = c1 * c2
                cur = acc.get(key)
                if cur is None:
                    acc[key] = (list(prod.nums), prod.den)
                elif cur[1] == prod.den:
                    nums = cur[0]
                    for i, n in enumerate(prod.nums):
                        nums[i] += n
                else:
                    nums, den = cur
                    g = gcd(den, prod.den)
                    scale_old, scale_new = prod.den // g, den // g
                    for i, n in enumerate(prod.nums):
                        nums[i] = nums[i] * scale_old + n * scale_new
                    acc[key] = (nums, den * scale_old)
        out = {
            k: FieldElem(self.field, tuple(nums), den)
            for k, (nums, den) in acc.items()
        }
        return MSeries.from_dict(self.field, self.nvars, order, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MSeries":
        return power_m(self, e)

    def substitute(self, args: Sequence["MSeries"]) -> "MSeries":
        """Evaluate at z_i = args[i]; every argument needs zero constant term."""
        if len(args) != self.nvars:
            raise DimensionMismatch(
                f"need {self.nvars} substitution arguments, got {len(args)}"
            )
        order = self.order
        for arg in args:
            self._check_sub(arg)
            if not arg.constant_term.is_zero():
                raise InnerHasConstant("substitution argument has a constant term")
            order = min(order, arg.order)
        if not args:
            return self
        nvars_out = args[0].nvars
        field = self.field
        # powers of each argument, up to the largest exponent that appears
        maxexp = [0] * self.nvars
        for k, _ in self.terms:
            for i, e in enumerate(k):
                maxexp[i] = max(maxexp[i], e)
        pows: list[list[MSeries]] = []
        one = MSeries.from_dict(field, nvars_out, order, {(0,) * nvars_out: 1})
        for i, arg in enumerate(args):
            row = [one]
            cur = one
            for _ in range(maxexp[i]):
                cur = cur * arg
                row.append(cur)
            pows.append(row)
        acc = MSeries.zero(field, nvars_out, order)
        for k, c in self.terms:
            if sum(k) > order:
                continue
            term = None
            for i, e in enumerate(k):
                if e:
                    term = pows[i][e] if term is None else term * pows[i][e]
            if term is None:
                acc = acc + c
            else:
                acc = acc + term * c
        return acc

    def _check_sub(self, arg: "MSeries") -> None:
        if arg.field != self.field:
            raise FieldMismatch("series over different fields")

    def to_univariate(self) -> Series:
        """View a one-variable MSeries as a Series."""
        if self.nvars != 1:
            raise DimensionMismatch("only one-variable series convert")
        coeffs = [self.field.zero()] * self.order
        const = self.field.zero()
        for (k,), c in self.terms:
            if k == 0:
                const = c
            else:
                coeffs[k - 1] = c
        return Series(self.field, self.order, const, tuple(coeffs))

    @classmethod
    def from_univariate(cls, v: Series) -> "MSeries":
        terms = {(k,): c for k, c in enumerate([v.const] + list(v.coeffs))}
        return cls.from_dict(v.field, 1, v.order, terms)

    def __repr__(self) -> str:
        parts = [f"({c})*z^{list(k)}" for k, c in self.terms]
        body = " + ".join(parts) if parts else "0"
        return f"MSeries[{body}; order {self.order}]"


def mul_monomial(v: MSeries, expvec: Sequence[int], scalar: Coeff = 1) -> MSeries:
    """v * scalar * z**expvec, truncated to v's order."""
    expvec = tuple(int(e) for e in expvec)
    c = scalar if isinstance(scalar, FieldElem) else v.field.elem(scalar)
    acc = {}
    for k, val in v.terms:
        key = tuple(a + b for a, b in zip(k, expvec))
        if sum(key) <= v.order:
            acc[key] = val * c
    return MSeries.from_dict(v.field, v.nvars, v.order, acc)


def delta_i(v: MSeries, i: int) -> MSeries:
    """Logarithmic derivative z_i d/dz_i: scale each term by its i-th exponent."""
    if not 0 <= i < v.nvars:
        raise DimensionMismatch(f"variable index {i} out of range")
    return MSeries.from_dict(
        v.field, v.nvars, v.order, {k: c * k[i] for k, c in v.terms}
    )


def _unit_inverse_m(y: MSeries) -> MSeries:
    # 1/(c(1+s)) = (1/c) sum (-s)**r  with s the zero-constant part of y/c
    c = invert(y.constant_term)
    neg_s = (y.constant_term - y) * c
    one = MSeries.from_dict(y.field, y.nvars, y.order, {(0,) * y.nvars: 1})
    acc = one
    cur = one
    for _ in range(y.order):
        cur = cur * neg_s
        if cur.is_zero():
            break
        acc = acc + cur
    return acc * c


def power_m(y: MSeries, e: int) -> MSeries:
    """Integer power; negative e requires constant term 1."""
    one = MSeries.from_dict(y.field, y.nvars, y.order, {(0,) * y.nvars: 1})
    if e == 0:
        return one
    if e < 0:
        if y.constant_term != y.field.one():
            raise NonUnitConstant("negative powers need constant term 1")
        y = _unit_inverse_m(y)
        e = -e
    result = None
    base = y
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def exp_m(v: MSeries) -> MSeries:
    """exp of a series with zero constant term: sum of v**r / r!."""
    if not v.constant_term.is_zero():
        raise BadConstantTerm("exp needs a vanishing constant term")
    one = MSeries.from_dict(v.field, v.nvars, v.order, {(0,) * v.nvars: 1})
    acc = one
    cur = one
    fact = 1
    for r in range(1, v.order + 1):
        cur = cur * v
        if cur.is_zero():
            break
        fact *= r
        acc = acc + cur * Fraction(1, fact)
    return acc


def log_m(y: MSeries) -> MSeries:
    """log of a series with constant term 1."""
    if y.constant_term != y.field.one():
        raise BadConstantTerm("log needs constant term 1")
    t = y - y.field.one()
    acc = MSeries.zero(y.field, y.nvars, y.order)
    cur = None
    for r in range(1, y.order + 1):
        cur = t if cur is None else cur * t
        if cur.is_zero():
            break
        acc = acc + cur * Fraction((-1) ** (r + 1), r)
    return acc


def invert_map(maps: Sequence[MSeries]) -> tuple[MSeries, ...]:
    """Inverse of the coordinate change z -> (maps_i(z)).

    Each component must be sigma_i * z_i * (series with constant term 1),
    sigma_i = +-1.  The inverse is found by the graded fixed point
    G_i = sigma_i * y_i / u_i(G), which gains one exact total degree per pass.
    """
    n = len(maps)
    if n == 0:
        raise DimensionMismatch("empty coordinate map")
    field = maps[0].field
    order = min(m.order for m in maps)
    sigmas: list[int] = []
    units: list[MSeries] = []
    one = field.one()
    for i, comp in enumerate(maps):
        if comp.nvars != n:
            raise DimensionMismatch(
                f"component {i} is in {comp.nvars} variables, expected {n}"
            )
        ei = tuple(1 if j == i else 0 for j in range(n))
        lin = comp.as_dict.get(ei)
        if lin is None or (lin != one and lin != -one):
            raise BadLinearPart(
                f"component {i} must have coefficient +-1 at z_{i}"
            )
        sigma = 1 if lin == one else -1
        shifted = {}
        for k, c in comp.terms:
            if k[i] < 1:
                raise BadLinearPart(
                    f"component {i} contains a term not divisible by z_{i}"
                )
            key = tuple(a - b for a, b in zip(k, ei))
            if sum(key) <= order:
                shifted[key] = c * sigma
        u = MSeries.from_dict(field, n, order, shifted)
        sigmas.append(sigma)
        units.append(u)
    g = [
        MSeries.var(field, n, order, i) * sigmas[i] for i in range(n)
    ]
    # pass at working order w trusts degrees < w, so early passes stay small
    for w in range(2, order + 1):
        gw = [MSeries.from_dict(field, n, w, dict(c.as_dict)) for c in g]
        g = [
            mul_monomial(
                power_m(units[i].substitute(gw), -1),
                tuple(1 if j == i else 0 for j in range(n)),
                sigmas[i],
            )
            for i in range(n)
        ]
    return tuple(g)
