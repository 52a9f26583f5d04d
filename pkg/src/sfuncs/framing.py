"""Framing transformations of s-function data.

The elementary framing of W (constant term zero) substitutes the coordinate
zt = -z * Y with Y = exp(-delta W), and has closed-form output coefficients

    atil_k = (-1)**(k-1) * [z**k] Y**(-k),

the Lagrange constant-term extraction.  The same answer comes from full
reversion of zt followed by W~ = dint(-log Y~); both paths are exposed and
must agree exactly.

The integer family frame_f substitutes z_f = z * (-Y)**f and returns
(W - (f/2) (delta W)**2) in the new coordinate; f = 0 is the identity and
the elementary framing is -frame_f(., 1).

frame_multi is the several-variable version driven by a symmetric integer
matrix kappa: coordinate i picks up exp(-sum_k kappa_ik delta_k W) and the
sign (-1)**kappa_ii, and the output is
(W - 1/2 sum_jk kappa_jk delta_j W delta_k W) in the inverted coordinates.
Framings compose additively in kappa.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstantTermNonzero, DimensionMismatch, NotSymmetric
from .mseries import MSeries, delta_i, exp_m, invert_map, mul_monomial
from .series import (
    Series,
    compose,
    delta,
    dint,
    exp_series,
    log_series,
    power,
    revert,
    shift_down,
    shift_up,
)


@dataclass(frozen=True)
class Kappa:
    """Symmetric integer framing matrix."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        rows = tuple(tuple(int(c) for c in row) for row in self.entries)
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("framing matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetric(
                        f"entries ({i},{j}) and ({j},{i}) differ"
                    )
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def sigma(self, i: int) -> int:
        """Coordinate sign (-1)**kappa_ii."""
        return -1 if self.entries[i][i] % 2 else 1

    def __add__(self, other: "Kappa") -> "Kappa":
        if not isinstance(other, Kappa):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch("framing matrices of different size")
        return Kappa(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )

    @classmethod
    def parse(cls, text: str) -> "Kappa":
        """Rows separated by ';', entries by ','.  '1,0;0,1' is diag(1,1)."""
        rows = []
        for row in text.strip().split(";"):
            rows.append(tuple(int(c) for c in row.split(",")))
        return cls(tuple(rows))


def _require_no_constant(w) -> None:
    const = w.const if isinstance(w, Series) else w.constant_term
    if not const.is_zero():
        raise ConstantTermNonzero("framing input must have zero constant term")


def frame_elementary(w: Series, via_reversion: bool = False) -> Series:
    """Elementary framing: output coefficients atil_k / k**2 in zt = -z Y.

    via_reversion selects the independent computation through revert; the
    default is the Lagrange coefficient extraction.
    """
    _require_no_constant(w)
    field, n = w.field, w.order
    y = exp_series(-delta(w))
    if via_reversion:
        zt = -shift_up(y)  # -z*Y, exact to order n+1
        g = revert(zt)
        ytil = -shift_down(g)  # g = -zt * Ytil(zt)
        return dint(-log_series(ytil))
    yinv = power(y, -1)
    acc = yinv
    coeffs = []
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        coeffs.append(acc.coeff(k) * Fraction(sign, k * k))
        if k < n:
            acc = acc * yinv
    return Series(field, n, field.zero(), tuple(coeffs))


def frame_f(w: Series, f: int) -> Series:
    """Integer framing: (W - (f/2)(delta W)**2) in the coordinate z_f = z(-Y)**f."""
    _require_no_constant(w)
    n = w.order
    y = exp_series(-delta(w))
    yf = power(y, f)
    if f % 2:
        yf = -yf
    zf = shift_up(yf)  # z * (-Y)**f, exact to order n+1
    back = revert(zf)
    dw = delta(w)
    body = w - dw * dw * Fraction(f, 2)
    return compose(body, back)


def frame_multi(w: MSeries, kappa: Kappa) -> MSeries:
    """Framing of a multivariate series by a symmetric integer matrix."""
    _require_no_constant(w)
    if kappa.n != w.nvars:
        raise DimensionMismatch(
            f"framing matrix is {kappa.n}x{kappa.n}, series has {w.nvars} variables"
        )
    n = w.nvars
    d = [delta_i(w, i) for i in range(n)]
    comps = []
    for i in range(n):
        expo = MSeries.zero(w.field, n, w.order)
        for k in range(n):
            if kappa.entries[i][k]:
                expo = expo + d[k] * (-kappa.entries[i][k])
        unit = exp_m(expo)
        ei = tuple(1 if j == i else 0 for j in range(n))
        comps.append(mul_monomial(unit, ei, kappa.sigma(i)))
    back = invert_map(comps)
    body = w
    for j in range(n):
        for k in range(n):
            if kappa.entries[j][k]:
                body = body - d[j] * d[k] * Fraction(kappa.entries[j][k], 2)
    return body.substitute(back)
