"""Truncated formal power series with number field coefficients.

A Series keeps coefficients for z**1 .. z**order plus an explicit constant
term (usually zero here).  Binary operations truncate to the smaller order,
and the result records that order; nothing is ever padded silently.

delta is the logarithmic derivative z d/dz; dint is its right inverse
(divide the k-th coefficient by k), defined only for vanishing constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    BadConstantTerm,
    FieldMismatch,
    InnerHasConstant,
    NonUnitConstant,
    NonUnitLinearTerm,
    NonzeroConstant,
    SfuncError,
)
from .numfield import FieldElem, NumberField, invert

Coeff = Union[int, Fraction, FieldElem]


def _as_elem(field: NumberField, v: Coeff) -> FieldElem:
    if isinstance(v, FieldElem):
        if v.field != field:
            raise FieldMismatch("coefficient from a different field")
        return v
    return field.elem(v)


@dataclass(frozen=True)
class Series:
    field: NumberField
    order: int
    const: FieldElem
    coeffs: tuple[FieldElem, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal the order")

    @classmethod
    def from_coeffs(
        cls,
        field: NumberField,
        order: int,
        coeffs: Sequence[Coeff] = (),
        const: Coeff = 0,
    ) -> "Series":
        """Series from the coefficients of z**1..z**order (short lists are padded)."""
        elems = [_as_elem(field, c) for c in coeffs]
        if len(elems) > order:
            raise ValueError("more coefficients than the stated order")
        elems += [field.zero()] * (order - len(elems))
        return cls(field, order, _as_elem(field, const), tuple(elems))

    @classmethod
    def zero(cls, field: NumberField, order: int) -> "Series":
        return cls.from_coeffs(field, order)

    @classmethod
    def var(cls, field: NumberField, order: int) -> "Series":
        """The series z."""
        return cls.from_coeffs(field, order, [1])

    def coeff(self, k: int) -> FieldElem:
        """Coefficient of z**k, with k = 0 giving the constant term."""
        if k == 0:
            return self.const
        if 1 <= k <= self.order:
            return self.coeffs[k - 1]
        raise ValueError(f"index {k} is outside the truncation order {self.order}")

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.field, order, self.const, self.coeffs[:order])

    def _check_field(self, other: "Series") -> None:
        if other.field != self.field:
            raise FieldMismatch("series over different fields")

    def __add__(self, other) -> "Series":
        if isinstance(other, (int, Fraction, FieldElem)):
            return Series(
                self.field,
                self.order,
                self.const + _as_elem(self.field, other),
                self.coeffs,
            )
        if not isinstance(other, Series):
            return NotImplemented
        self._check_field(other)
        n = min(self.order, other.order)
        return Series(
            self.field,
            n,
            self.const + other.const,
            tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])),
        )

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(
            self.field, self.order, -self.const, tuple(-c for c in self.coeffs)
        )

    def __sub__(self, other) -> "Series":
        if isinstance(other, Series):
            return self + (-other)
        if isinstance(other, (int, Fraction, FieldElem)):
            return self + (-_as_elem(self.field, other))
        return NotImplemented

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction, FieldElem)):
            c = _as_elem(self.field, other)
            return Series(
                self.field,
                self.order,
                self.const * c,
                tuple(a * c for a in self.coeffs),
            )
        if not isinstance(other, Series):
            return NotImplemented
        self._check_field(other)
        n = min(self.order, other.order)
        a = [self.const] + list(self.coeffs[:n])
        b = [other.const] + list(other.coeffs[:n])
        zero = self.field.zero()
        out = [zero] * (n + 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j in range(0, n + 1 - i):
                bj = b[j]
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return Series(self.field, n, out[0], tuple(out[1:]))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Series":
        return power(self, e)

    def is_zero(self) -> bool:
        return self.const.is_zero() and all(c.is_zero() for c in self.coeffs)

    def __repr__(self) -> str:
        parts = [] if self.const.is_zero() else [f"({self.const})"]
        for k, c in enumerate(self.coeffs, start=1):
            if not c.is_zero():
                parts.append(f"({c})*z^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"Series[{body} + O(z^{self.order + 1})]"


def delta(v: Series) -> Series:
    """z d/dz: multiply the k-th coefficient by k.  Drops the constant term."""
    return Series(
        v.field,
        v.order,
        v.field.zero(),
        tuple(c * k for k, c in enumerate(v.coeffs, start=1)),
    )


def dint(v: Series) -> Series:
    """Right inverse of delta: divide the k-th coefficient by k.

    The constant term must vanish.
    """
    if not v.const.is_zero():
        raise NonzeroConstant("dint needs a vanishing constant term")
    return Series(
        v.field,
        v.order,
        v.const,
        tuple(c / k for k, c in enumerate(v.coeffs, start=1)),
    )


def exp_series(v: Series) -> Series:
    """exp of a series with zero constant term, by the recurrence
    k*y_k = sum_j j*v_j*y_{k-j}."""
    if not v.const.is_zero():
        raise BadConstantTerm("exp needs a vanishing constant term")
    field, n = v.field, v.order
    dv = [field.zero()] + [c * k for k, c in enumerate(v.coeffs, start=1)]
    y = [field.one()]
    for k in range(1, n + 1):
        s = field.zero()
        for j in range(1, k + 1):
            if not dv[j].is_zero() and not y[k - j].is_zero():
                s = s + dv[j] * y[k - j]
        y.append(s / k)
    return Series(field, n, y[0], tuple(y[1:]))


def log_series(y: Series) -> Series:
    """log of a series with constant term 1, inverse of exp_series."""
    field, n = y.field, y.order
    if y.const != field.one():
        raise BadConstantTerm("log needs constant term 1")
    yc = [field.one()] + list(y.coeffs)
    v = [field.zero()]
    dv = [field.zero()]
    for k in range(1, n + 1):
        s = field.zero()
        for j in range(1, k):
            if not dv[j].is_zero() and not yc[k - j].is_zero():
                s = s + dv[j] * yc[k - j]
        vk = yc[k] - s / k
        v.append(vk)
        dv.append(vk * k)
    return Series(field, n, v[0], tuple(v[1:]))


def compose(outer: Series, inner: Series) -> Series:
    """outer(inner(z)); the inner series must have zero constant term.

    Exact to the smaller of the two truncation orders.
    """
    outer._check_field(inner)
    if not inner.const.is_zero():
        raise InnerHasConstant("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    u = inner.truncate(n)
    acc = Series.from_coeffs(outer.field, n, const=outer.coeff(n) if n else outer.const)
    for k in range(n - 1, -1, -1):
        acc = acc * u + outer.coeff(k)
    return acc


def _unit_inverse(y: Series) -> Series:
    """1/y for invertible constant term."""
    field, n = y.field, y.order
    c = invert(y.const)
    w = [c]
    for k in range(1, n + 1):
        s = field.zero()
        for j in range(1, k + 1):
            yj = y.coeffs[j - 1]
            if not yj.is_zero() and not w[k - j].is_zero():
                s = s + yj * w[k - j]
        w.append(-(c * s))
    return Series(field, n, w[0], tuple(w[1:]))


def power(y: Series, e: int) -> Series:
    """Integer power of a series; negative e requires constant term 1."""
    if e == 0:
        return Series.from_coeffs(y.field, y.order, const=1)
    if e < 0:
        if y.const != y.field.one():
            raise NonUnitConstant("negative powers need constant term 1")
        y = _unit_inverse(y)
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


def revert(f: Series) -> Series:
    """Compositional inverse g with f(g(z)) = g(f(z)) = z to the truncation.

    Needs zero constant term and an invertible linear coefficient.  The
    k-th coefficient is the Lagrange extraction (1/k)[z**(k-1)] (z/f)**k.
    """
    if not f.const.is_zero():
        raise NonUnitLinearTerm("reversion needs a vanishing constant term")
    if f.order < 1:
        raise NonUnitLinearTerm("reversion needs at least one coefficient")
    field, n = f.field, f.order
    h = shift_down(f)  # f/z, constant term f_1
    try:
        w = _unit_inverse(h)
    except SfuncError as exc:
        raise NonUnitLinearTerm("linear coefficient is not invertible") from exc
    g = []
    wk = w
    for k in range(1, n + 1):
        g.append(wk.coeff(k - 1) / k)
        if k < n:
            wk = wk * w
    return Series(field, n, field.zero(), tuple(g))


def shift_sh(v: Series, l: int) -> Series:
    """Index dilation z -> z**l: coefficient of z**(l*k) becomes v_k.

    Truncation order is preserved, so the tail beyond it is dropped.
    """
    if l < 1:
        raise ValueError("dilation factor must be at least 1")
    field, n = v.field, v.order
    out = [field.zero()] * n
    for k in range(1, n // l + 1):
        out[l * k - 1] = v.coeffs[k - 1]
    return Series(field, n, v.const, tuple(out))


def shift_up(v: Series) -> Series:
    """Multiply by z: order grows by one, nothing is lost."""
    return Series(v.field, v.order + 1, v.field.zero(), (v.const,) + v.coeffs)


def shift_down(v: Series) -> Series:
    """Divide by z a series with zero constant term: order shrinks by one."""
    if not v.const.is_zero():
        raise NonzeroConstant("shift_down needs a vanishing constant term")
    if v.order < 1:
        raise ValueError("nothing left to shift")
    return Series(v.field, v.order - 1, v.coeffs[0], v.coeffs[1:])
