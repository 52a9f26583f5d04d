from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sfuncs.catalog import polylog
from sfuncs.errors import ConstantTermNonzero, NotIntegral
from sfuncs.mseries import MSeries
from sfuncs.numfield import denominator_support, make_field, rationals
from sfuncs.series import Series, delta, dint, shift_sh
from sfuncs.sfunc import check_sfunction, dwork_assemble, dwork_factor, generate_crt

Q = rationals()
QI3 = make_field([3, 0, 1])
CUBIC = make_field([-1, -2, 1, 1])


def _series(coeffs, field=Q):
    return Series.from_coeffs(field, len(coeffs), [Fraction(c) for c in coeffs])


def test_polylogs_pass_their_own_strength():
    for s in (1, 2, 3):
        rep = check_sfunction(polylog(s, 20), s)
        assert rep.passed
        assert rep.skipped_primes == ()


def test_li1_fails_strength_two():
    rep = check_sfunction(polylog(1, 8), 2)
    assert not rep.passed
    v = rep.violations[0]
    # a_k = k: at k=2, Frob(a_1) - a_2 = 1 - 2, odd
    assert (v.index, v.p, v.required, v.valuation) == (2, 2, 2, 0)


def test_perturbed_dilog_single_violation():
    # a_4 = 3 instead of 1, order kept below 8 so no downstream echo
    coeffs = [Fraction(1, k * k) for k in range(1, 8)]
    coeffs[3] = Fraction(3, 16)
    rep = check_sfunction(_series(coeffs), 2)
    bad = rep.violations
    assert len(bad) == 1
    v = bad[0]
    assert (v.index, v.p, v.required, v.valuation) == (4, 2, 4, 1)


def test_perturbation_echoes_at_double_index():
    coeffs = [Fraction(1, k * k) for k in range(1, 9)]
    coeffs[3] = Fraction(3, 16)
    rep = check_sfunction(_series(coeffs), 2)
    spots = {(v.index, v.p) for v in rep.violations}
    assert spots == {(4, 2), (8, 2)}


def test_constant_term_must_vanish():
    v = Series(Q, 4, Q.one(), tuple(Q.elem(Fraction(1, k * k)) for k in range(1, 5)))
    with pytest.raises(ConstantTermNonzero):
        check_sfunction(v, 2)


def test_scaled_input_checked_through_denominators():
    # half a dilogarithm: congruences still hold, only 2-integrality breaks
    half = [Fraction(1, 2 * k * k) for k in range(1, 13)]
    rep = check_sfunction(_series(half), 2)
    assert not rep.passed
    assert all(v.kind == "integrality" for v in rep.violations)
    assert {v.p for v in rep.violations} == {2}
    assert all(c.ok for c in rep.checks if c.kind == "congruence")


def test_dilation_preserves():
    rep = check_sfunction(shift_sh(polylog(2, 8), 3), 2)
    assert rep.passed


def test_delta_lowers_strength():
    li3 = polylog(3, 16)
    assert check_sfunction(delta(li3), 2).passed
    assert check_sfunction(delta(delta(li3)), 1).passed
    assert check_sfunction(dint(polylog(2, 16)), 3).passed


def test_good_primes_beyond_order_covered_by_integrality():
    # every prime > order divides no index, so integrality is the whole claim
    v = _series([Fraction(1, 101)] + [0] * 5)
    rep = check_sfunction(v, 2)
    assert not rep.passed
    assert any(v_.p == 101 and v_.kind == "integrality" for v_ in rep.violations)


def test_bad_primes_skipped_and_reported():
    # constant tower a_k = 1/7: only the ramified prime shows up, and it is
    # excluded from the verdict rather than judged
    coeffs = [CUBIC.elem(Fraction(1, 7 * k * k)) for k in range(1, 7)]
    rep = check_sfunction(Series.from_coeffs(CUBIC, 6, coeffs), 2)
    assert rep.skipped_primes == (7,)
    assert rep.passed
    assert rep.violations == []


def test_jobs_parameter_is_pure_parallelism():
    v = polylog(2, 24)
    seq = check_sfunction(v, 2, jobs=1)
    par = check_sfunction(v, 2, jobs=3)
    assert seq.checks == par.checks
    assert seq.skipped_primes == par.skipped_primes


# --- dwork factorization


def test_dwork_factor_log_geometric():
    # -log(1-z): b_1 = 1, rest 0
    b = dwork_factor(polylog(1, 8))
    assert b[0] == 1
    assert all(x.is_zero() for x in b[1:])


def test_dwork_factor_example():
    # a = (1, 3, ...): b_2 = a_2/2 - b_1^2/2 = 1
    v = _series([1, Fraction(3, 2), 0, 0])
    b = dwork_factor(v)
    assert b[0] == 1 and b[1] == 1


def test_dwork_assemble_roundtrip():
    rng = random.Random(3)
    for field in (Q, QI3):
        b = [field.elem(rng.randrange(-9, 10)) for _ in range(10)]
        v = dwork_assemble(b, 10)
        assert dwork_factor(v) == b


def test_dwork_three_way_equivalence_smoke():
    rng = random.Random(11)
    from sfuncs.series import exp_series

    for _ in range(25):
        coeffs = [Fraction(rng.randrange(-6, 7), rng.choice((1, 1, 1, 2, 3)))
                  for _ in range(12)]
        v = _series(coeffs)
        b = dwork_factor(v)
        ev = exp_series(v)
        b_integral = all(not denominator_support(x) for x in b)
        e_integral = all(
            not denominator_support(ev.coeff(k)) for k in range(1, 13)
        )
        verdict = check_sfunction(v, 1).passed
        assert verdict == b_integral == e_integral


# --- congruence-tower generator


def test_generate_crt_rationals_tower():
    # x = 4, s = 3: the canonical representative stays 4 at every index
    v = generate_crt(Q, Q.elem(4), 3, 12)
    for k in range(1, 13):
        assert v.coeff(k) * k**3 == 4
    assert check_sfunction(v, 3).passed


def test_generate_crt_smallest_representative():
    # s = 2: at k = 2 the representative of 4 mod 4 is 0
    v = generate_crt(Q, Q.elem(4), 2, 4)
    assert v.coeff(1) == 4
    assert v.coeff(2) == 0
    assert check_sfunction(v, 2).passed


def test_generate_crt_number_field():
    x = QI3.gen()
    v = generate_crt(QI3, x, 2, 10)
    assert v.coeff(1) == x
    # indices sharing a factor with the discriminant produce zero
    assert (v.coeff(2) * 4).is_zero()
    assert (v.coeff(6) * 36).is_zero()
    a5 = v.coeff(5) * 25
    assert a5 == x * 24  # Frob_5(x) = -x = 24x mod 25
    assert check_sfunction(v, 2).passed
    assert check_sfunction(generate_crt(QI3, x, 3, 10), 3).passed


def test_generate_crt_needs_integral_seed():
    with pytest.raises(NotIntegral):
        generate_crt(Q, Q.elem(Fraction(1, 2)), 2, 4)


# --- multivariate checking


def _dilog_monomial(e1, e2, order, weight=1):
    d = {}
    k = 1
    while e1 * k + e2 * k <= order:
        d[(e1 * k, e2 * k)] = Fraction(weight, k * k)
        k += 1
    return MSeries.from_dict(Q, 2, order, d)


def test_multivariate_dilog_passes():
    w = _dilog_monomial(1, 0, 8) + _dilog_monomial(0, 1, 8) + _dilog_monomial(1, 1, 8) * 3
    rep = check_sfunction(w, 2)
    assert rep.passed
    assert rep.checks  # congruences were actually exercised


def test_multivariate_perturbation_detected():
    w = _dilog_monomial(1, 1, 6)
    bad = w + MSeries.from_dict(Q, 2, 6, {(2, 2): Fraction(1, 2)})
    rep = check_sfunction(bad, 2)
    assert not rep.passed
    assert any(tuple(v.index) == (2, 2) and v.p == 2 for v in rep.violations)


def test_multivariate_constant_rejected():
    w = MSeries.from_dict(Q, 2, 4, {(0, 0): 1, (1, 0): 1})
    with pytest.raises(ConstantTermNonzero):
        check_sfunction(w, 2)


def test_extra_primes_reported_not_judged():
    # 7 ramifies for this field; once an index needs precision 2 the lift
    # does not exist and the exploration says so without failing the check
    coeffs = [CUBIC.elem(Fraction(1, k * k)) for k in range(1, 15)]
    v = Series.from_coeffs(CUBIC, 14, coeffs)
    rep = check_sfunction(v, 2, extra_primes=(7,))
    assert rep.passed  # exploration never affects the verdict
    extra = rep.to_obj()["extra_primes"]
    assert extra[0]["p"] == 7
    assert extra[0]["bad"] is True
    assert extra[0]["frobenius_defined"] is False
    assert "LiftFailed" in extra[0]["error"]


def test_extra_primes_good_prime_checks():
    v = polylog(2, 10)
    rep = check_sfunction(v, 2, extra_primes=(3,))
    extra = rep.to_obj()["extra_primes"]
    assert extra[0]["frobenius_defined"] is True
    assert all(c["ok"] for c in extra[0]["checks"])
