from __future__ import annotations

from fractions import Fraction
from math import comb, inf

import pytest

from sfuncs.catalog import (
    CyclotomicSpec,
    _framed_log_column,
    abelian_generator,
    cyclotomic_field,
    cyclotomic_polynomial,
    from_log_poly,
    jk_check,
    polylog,
    polylog_frame_table,
)
from sfuncs.errors import BadConductor, BadConstant, DescentFailed, NotPrime, SmallPrime
from sfuncs.numfield import make_field, rationals
from sfuncs.sfunc import check_sfunction

Q = rationals()
CUBIC = make_field([-1, -2, 1, 1])

# d = 1..7 rows for f = 2..5, frozen reference values
TABLE = {
    2: [-2, 1, Fraction(-2, 3), 1, -2, Fraction(13, 3), -10],
    3: [3, Fraction(3, 2), 3, Fraction(15, 2), 24, Fraction(171, 2), 339],
    4: [-4, 4, -8, 28, -124, 624, -3452],
    5: [5, 5, Fraction(50, 3), 75, 425, Fraction(8240, 3), 19605],
}


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(7) == (1,) * 7
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # first conductor with a coefficient outside {-1, 0, 1}
    assert cyclotomic_polynomial(105)[7] == -2
    with pytest.raises(BadConductor):
        cyclotomic_polynomial(0)


def test_cyclotomic_field_degrees():
    assert cyclotomic_field(1).degree == 1
    assert cyclotomic_field(7).degree == 6
    assert cyclotomic_field(12).degree == 4


def test_abelian_conductor_one_is_scaled_polylog():
    v = abelian_generator(CyclotomicSpec(1, {0: 5}, 2), 8)
    li = polylog(2, 8)
    for k in range(1, 9):
        assert v.coeff(k).coords == (li.coeff(k).coords[0] * 5,)


def test_abelian_root_of_unity_tower():
    spec = CyclotomicSpec(3, {1: 1}, 2)
    v = abelian_generator(spec, 9)
    field = cyclotomic_field(3)
    for k in (3, 6, 9):
        assert v.coeff(k) * k**2 == 1  # zeta^k = 1 when 3 | k
    assert v.coeff(2) * 4 == field.gen() ** 2
    assert check_sfunction(v, 2).passed


@pytest.mark.parametrize("s", [1, 2, 3])
def test_abelian_generator_passes_check(s):
    spec = CyclotomicSpec(5, {1: 1, 4: 1}, s)
    assert check_sfunction(abelian_generator(spec, 40), s).passed


def test_abelian_index_permutation_under_frobenius():
    # replacing i by p*i mod N in the c's matches a_k -> a_pk
    spec = CyclotomicSpec(7, {1: 1, 6: 1}, 2)
    v = abelian_generator(spec, 21)
    for p in (2, 3, 5):
        permuted = CyclotomicSpec(7, {(p * i) % 7: c for i, c in spec.coeffs}, 2)
        vp = abelian_generator(permuted, 21)
        for k in range(1, 21 // p + 1):
            assert v.coeff(p * k) * (p * k) ** 2 == vp.coeff(k) * k**2


def test_descent_to_real_cubic_subfield():
    spec = CyclotomicSpec(7, {1: 1, 6: 1}, 2)
    big = cyclotomic_field(7)
    zeta = big.gen()
    w = abelian_generator(spec, 10, subfield=CUBIC, x_expr=zeta + zeta**6)
    assert w.field == CUBIC
    x = CUBIC.gen()
    assert w.coeff(1) == x
    assert w.coeff(2) * 4 == x * x - 2
    assert w.coeff(3) * 9 == x**3 - 3 * x
    assert check_sfunction(w, 2).passed


def test_descent_failures():
    big = cyclotomic_field(7)
    zeta = big.gen()
    x_expr = zeta + zeta**6
    # zeta itself does not live in the real subfield
    with pytest.raises(DescentFailed):
        abelian_generator(
            CyclotomicSpec(7, {1: 1}, 2), 4, subfield=CUBIC, x_expr=x_expr
        )
    # wrong defining polynomial for the supplied element
    with pytest.raises(DescentFailed):
        abelian_generator(
            CyclotomicSpec(7, {1: 1, 6: 1}, 2), 4,
            subfield=make_field([1, 0, 1]), x_expr=x_expr,
        )
    with pytest.raises(DescentFailed):
        abelian_generator(CyclotomicSpec(7, {1: 1, 6: 1}, 2), 4, subfield=CUBIC)


def test_cyclotomic_spec_validation():
    with pytest.raises(BadConductor):
        CyclotomicSpec(0, {}, 2)
    with pytest.raises(BadConductor):
        CyclotomicSpec(3, {5: 1}, 2)
    with pytest.raises(ValueError):
        CyclotomicSpec(3, {1: 1}, 0)


# --- log-of-polynomial series


def test_from_log_poly_geometric():
    assert from_log_poly(Q, [1, -1], 2, 10) == polylog(2, 10)


def test_from_log_poly_cubic_coefficients():
    x = CUBIC.gen()
    v = from_log_poly(CUBIC, [1, -x, 1], 2, 12)
    assert v.coeff(1) == x
    assert v.coeff(2) * 4 == x * x - 2
    assert check_sfunction(v, 2).passed


def test_from_log_poly_failing_example():
    v = from_log_poly(Q, [1, -2], 2, 6)
    rep = check_sfunction(v, 2)
    assert not rep.passed
    first = rep.violations[0]
    # a_k = 2^k: 2 - 4 has valuation 1
    assert (first.index, first.p, first.valuation) == (2, 2, 1)


def test_from_log_poly_constant_guard():
    with pytest.raises(BadConstant):
        from_log_poly(Q, [2, 1], 2, 4)
    with pytest.raises(BadConstant):
        from_log_poly(Q, [], 2, 4)


# --- framed polylog table


def test_table_matches_frozen_values():
    t = polylog_frame_table(range(2, 6), range(1, 8))
    for f in range(2, 6):
        for d in range(1, 8):
            assert t.entry(d, f) == TABLE[f][d - 1]
    assert t.nonintegral == ()
    assert t.to_obj()["six_over_f_integral"] is True


def test_table_f_zero_vanishes():
    t = polylog_frame_table([0], range(1, 5))
    assert all(t.entry(d, 0) == 0 for d in range(1, 5))


def test_log_column_closed_form():
    # reversion is ground truth; the closed form carries the corrected sign
    for f in range(0, 6):
        col = _framed_log_column(f, 12)
        for k in range(1, 13):
            sign = -1 if ((f + 1) * k) % 2 else 1
            assert col[k - 1] == Fraction(sign * comb(f * k, k), k), (f, k)


def test_table_csv_layout():
    t = polylog_frame_table(range(2, 6), range(1, 8))
    lines = t.to_csv().splitlines()
    assert lines[0] == "d,f=2,f=3,f=4,f=5"
    assert lines[1] == "1,-2,3,-4,5"
    assert lines[3] == "3,-2/3,3,-8,50/3"
    assert len(lines) == 8


def test_table_rejects_bad_d():
    with pytest.raises(ValueError):
        polylog_frame_table([2], [0, 1])


# --- binomial congruence sweep


def test_jk_examples():
    r = jk_check(5, 1, 2)
    rec = next(q for q in r.records if q.k == 1 and q.f == 2)
    assert rec.required == 3 and rec.valuation == 3 and rec.ok

    r7 = jk_check(7, 1, 1)
    assert r7.records[0].valuation == inf  # both binomials are 1

    r55 = jk_check(5, 5, 2)
    rec55 = next(q for q in r55.records if q.k == 5 and q.f == 2)
    assert rec55.alpha == 1 and rec55.required == 6 and rec55.valuation >= 6
    assert r55.passed


def test_jk_guards():
    with pytest.raises(SmallPrime):
        jk_check(3, 1, 1)
    with pytest.raises(NotPrime):
        jk_check(9, 1, 1)


def test_jk_report_serialization():
    obj = jk_check(7, 1, 1).to_obj()
    assert obj["pass"] is True
    assert obj["records"][0]["valuation"] == "inf"
