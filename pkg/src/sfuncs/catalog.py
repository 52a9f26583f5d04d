"""Constructors and reproducible tables built on the checker.

Generators: cyclotomic (abelian) coefficient sequences a_k = sum_i c_i zeta^(ik)
with an optional exact descent into a subfield, series with prescribed
delta^(s-1) V = -log Q(z), and the framed-polylog multiplicity table obtained
by exact reversion plus Moebius inversion.  Also the binomial congruence
checker binom(pkf, pk) = binom(kf, k) mod p^(3(ord_p(k)+1)) for p > 3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (
    BadConductor,
    BadConstant,
    DescentFailed,
    NotPrime,
    SmallPrime,
)
from .intutil import divisors, is_prime, moebius, ord_p
from .numfield import FieldElem, NumberField, make_field, rationals
from .series import Series, dint, log_series, power, revert, shift_down, shift_up


def _int_poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low to high), remainder zero."""
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(rem[i + len(den) - 1], den[-1])
        assert r == 0, "non-exact cyclotomic division"
        out[i] = q
        for j, d in enumerate(den):
            rem[i + j] -= q * d
    assert all(c == 0 for c in rem), "nonzero remainder in cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low to high.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    >>> cyclotomic_polynomial(7)
    (1, 1, 1, 1, 1, 1, 1)
    """
    if n < 1:
        raise BadConductor(f"conductor must be at least 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = _int_poly_divide(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> NumberField:
    """The field presented by the n-th cyclotomic polynomial."""
    return make_field(cyclotomic_polynomial(n))


def polylog(s: int, order: int, field: NumberField | None = None) -> Series:
    """The truncated polylogarithm sum z**k / k**s.

    >>> polylog(2, 3).coeff(3) == Fraction(1, 9)
    True
    """
    f = rationals() if field is None else field
    return Series.from_coeffs(
        f, order, [Fraction(1, k**s) for k in range(1, order + 1)]
    )


@dataclass(frozen=True)
class CyclotomicSpec:
    """A root-of-unity combination: conductor N, coefficients c_i, exponent s.

    The generated normalized coefficients are a_k = sum_i c_i zeta^(ik) with
    zeta the class of y in the quotient by the N-th cyclotomic polynomial.
    """

    conductor: int
    coeffs: tuple[tuple[int, Fraction], ...]
    s: int

    def __post_init__(self) -> None:
        if self.conductor < 1:
            raise BadConductor(f"conductor must be at least 1, got {self.conductor}")
        if self.s < 1:
            raise ValueError("s must be a positive integer")
        items = (
            self.coeffs.items()
            if isinstance(self.coeffs, Mapping)
            else self.coeffs
        )
        norm = []
        for i, c in sorted(items):
            i = int(i)
            c = Fraction(c)
            if not 0 <= i < self.conductor:
                raise BadConductor(
                    f"coefficient index {i} outside [0, {self.conductor})"
                )
            if c:
                norm.append((i, c))
        object.__setattr__(self, "coeffs", tuple(norm))


def _solve_rational(
    columns: list[tuple[Fraction, ...]], rhs: tuple[Fraction, ...]
) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] = rhs exactly; None when inconsistent."""
    rows = len(rhs)
    cols = len(columns)
    aug = [[columns[j][i] for j in range(cols)] + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if len(pivots) < cols:
        raise DescentFailed("powers of the supplied element are linearly dependent")
    for row in aug[r:]:
        if row[cols]:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol


def abelian_generator(
    spec: CyclotomicSpec,
    order: int,
    subfield: NumberField | None = None,
    x_expr: FieldElem | None = None,
) -> Series:
    """Series with normalized coefficients a_k = sum_i c_i zeta^(ik).

    The stored coefficient at z**k is a_k / k**s over the cyclotomic field.
    With subfield and x_expr given, every a_k is re-expressed exactly in the
    power basis of x_expr and the series is returned over the subfield;
    DescentFailed when some coefficient lies outside that span.
    """
    n = spec.conductor
    field = cyclotomic_field(n)
    zpow = [field.one()]
    for _ in range(n - 1):
        zpow.append(zpow[-1] * field.gen())
    raw = []
    for k in range(1, order + 1):
        a = field.zero()
        for i, c in spec.coeffs:
            a = a + zpow[(i * k) % n] * c
        raw.append(a)
    if subfield is None:
        return Series.from_coeffs(
            field, order, [a * Fraction(1, k**spec.s) for k, a in enumerate(raw, 1)]
        )
    if x_expr is None:
        raise DescentFailed("descent requested without the generator's expression")
    if x_expr.field != field:
        raise DescentFailed("generator expression lives in the wrong field")
    mp = subfield.minpoly
    val = field.elem(mp[-1])
    for c in reversed(mp[:-1]):
        val = val * x_expr + c
    if not val.is_zero():
        raise DescentFailed("supplied element is not a root of the subfield polynomial")
    cols = []
    acc = field.one()
    for _ in range(subfield.degree):
        cols.append(acc.coords)
        acc = acc * x_expr
    out = []
    for k, a in enumerate(raw, 1):
        sol = _solve_rational(cols, a.coords)
        if sol is None:
            raise DescentFailed(f"coefficient at index {k} lies outside the subfield")
        out.append(subfield.elem(sol) * Fraction(1, k**spec.s))
    return Series.from_coeffs(subfield, order, out)


def from_log_poly(field: NumberField, q_poly, s: int, order: int) -> Series:
    """The series V with delta^(s-1) V = -log Q(z) for a polynomial Q, Q(0)=1.

    q_poly lists the coefficients of Q from degree 0 up; entries may be ints,
    Fractions, or elements of the field.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    qc = [c if isinstance(c, FieldElem) else field.elem(c) for c in q_poly]
    if not qc or qc[0] != field.one():
        raise BadConstant("polynomial must have constant coefficient 1")
    tail = qc[1:][:order]
    tail += [field.zero()] * (order - len(tail))
    q = Series(field, order, field.one(), tuple(tail))
    v = -log_series(q)
    for _ in range(s - 1):
        v = dint(v)
    return v


@dataclass(frozen=True)
class FramedPolylogTable:
    """Exact table of framed-polylog multiplicities N_d^(f).

    nonintegral lists the (d, f) cells with f != 0 where 6*N/f is not an
    integer; the pattern 6*N/f in Z is observed on all computed data but is
    recorded as a measurement, never enforced.
    """

    d_values: tuple[int, ...]
    f_values: tuple[int, ...]
    cells: tuple[tuple[Fraction, ...], ...]  # rows follow d_values
    nonintegral: tuple[tuple[int, int], ...]

    def entry(self, d: int, f: int) -> Fraction:
        return self.cells[self.d_values.index(d)][self.f_values.index(f)]

    def to_obj(self) -> dict:
        return {
            "d": list(self.d_values),
            "f": list(self.f_values),
            "entries": [[str(x) for x in row] for row in self.cells],
            "six_over_f_integral": not self.nonintegral,
            "nonintegral_cells": [list(c) for c in self.nonintegral],
        }

    def to_csv(self) -> str:
        lines = ["d," + ",".join(f"f={f}" for f in self.f_values)]
        for d, row in zip(self.d_values, self.cells):
            lines.append(f"{d}," + ",".join(str(x) for x in row))
        return "\n".join(lines) + "\n"


def _framed_log_column(f: int, dmax: int) -> list[Fraction]:
    """Coefficients of log Y_f to order dmax, from exact reversion.

    Y_f solves z = (-1)**f * w * Y_f(w) under w = z / (z-1)**f.
    """
    field = rationals()
    one_minus = Series(
        field, dmax, field.one(), (field.elem(-1),) + (field.zero(),) * (dmax - 1)
    )
    zf = shift_up(power(one_minus, -f))
    if f % 2:
        zf = -zf
    g = revert(zf)
    y = shift_down(g)
    if f % 2:
        y = -y
    ly = log_series(y)
    return [ly.coeff(k).coords[0] for k in range(1, dmax + 1)]


def polylog_frame_table(f_range, d_range) -> FramedPolylogTable:
    """Table of N_d^(f) for d in d_range, f in f_range.

    For each f the coefficients g_k of dint(dint(log Y_f)) decompose as
    k**3 * g_k = sum_{d|k} N_d * d**3, and Moebius inversion extracts N_d.
    """
    d_values = tuple(d_range)
    f_values = tuple(f_range)
    if not d_values or min(d_values) < 1:
        raise ValueError("d range must contain positive integers")
    dmax = max(d_values)
    columns = {}
    for f in f_values:
        lcol = _framed_log_column(f, dmax)
        h = [k * lcol[k - 1] for k in range(1, dmax + 1)]  # k**3 * g_k
        columns[f] = {
            k: sum(moebius(k // d) * h[d - 1] for d in divisors(k)) / k**3
            for k in d_values
        }
    cells = tuple(
        tuple(columns[f][d] for f in f_values) for d in d_values
    )
    bad = tuple(
        (d, f)
        for d in d_values
        for f in f_values
        if f and (6 * columns[f][d] / f).denominator != 1
    )
    return FramedPolylogTable(d_values, f_values, cells, bad)


@dataclass(frozen=True)
class JKRecord:
    """One binomial congruence instance at (k, f)."""

    k: int
    f: int
    alpha: int
    required: int
    valuation: float  # ord_p of the difference; math.inf when it vanishes
    ok: bool


@dataclass(frozen=True)
class JKReport:
    p: int
    records: tuple[JKRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.records)

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "pass": self.passed,
            "records": [
                {
                    "k": r.k,
                    "f": r.f,
                    "alpha": r.alpha,
                    "required": r.required,
                    "valuation": "inf" if r.valuation == math.inf else r.valuation,
                    "ok": r.ok,
                }
                for r in self.records
            ],
        }


def jk_check(p: int, k_max: int, f_max: int) -> JKReport:
    """Verify binom(pkf, pk) = binom(kf, k) mod p^(3(ord_p(k)+1)) for p > 3.

    >>> jk_check(5, 1, 2).records[-1].valuation
    3
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= 3:
        raise SmallPrime("the congruence needs p > 3")
    records = []
    for k in range(1, k_max + 1):
        alpha = ord_p(k, p)
        required = 3 * (alpha + 1)
        for f in range(1, f_max + 1):
            diff = math.comb(p * k * f, p * k) - math.comb(k * f, k)
            val = math.inf if diff == 0 else ord_p(diff, p)
            records.append(
                JKRecord(k, f, alpha, required, val, val >= required)
            )
    return JKReport(p, tuple(records))
