from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sfuncs.errors import BadLinearPart, DimensionMismatch, InnerHasConstant
from sfuncs.mseries import MSeries, delta_i, exp_m, invert_map, log_m, power_m
from sfuncs.numfield import make_field, rationals
from sfuncs.series import Series

Q = rationals()


def _m(d, nvars=2, order=6, field=Q):
    return MSeries.from_dict(field, nvars, order, d)


def test_from_dict_drops_zeros_and_overflow():
    v = _m({(1, 0): 1, (0, 2): 0, (5, 2): 3}, order=6)
    assert v.coeff((0, 2)) == 0
    assert v.coeff((1, 0)) == 1
    assert len(v.terms) == 1  # degree-7 key dropped, zero dropped
    with pytest.raises(ValueError):
        v.coeff((5, 2))  # beyond the truncation order


def test_exponent_length_checked():
    with pytest.raises(DimensionMismatch):
        _m({(1, 0, 0): 1})


def test_arithmetic_and_min_order():
    a = _m({(1, 0): 1, (0, 1): 2}, order=6)
    b = _m({(1, 1): 3}, order=4)
    s = a + b
    assert s.order == 4
    assert s.coeff((1, 1)) == 3
    p = a * b
    assert p.order == 4
    assert p.coeff((2, 1)) == 3
    assert p.coeff((1, 2)) == 6
    assert (a - a).is_zero()
    assert (a * Fraction(1, 2)).coeff((0, 1)) == 1


def test_product_truncates_by_total_degree():
    a = _m({(2, 1): 1}, order=4)
    assert (a * a).is_zero()  # degree 6 > 4


def test_substitute_matches_hand_expansion():
    # f(u, v) = u*v + u^2 under u = y1 + y2, v = y2
    f = _m({(1, 1): 1, (2, 0): 1}, order=3)
    u = _m({(1, 0): 1, (0, 1): 1}, order=3)
    v = _m({(0, 1): 1}, order=3)
    g = f.substitute((u, v))
    # (y1+y2) y2 + (y1+y2)^2 = y1^2 + 3 y1 y2 + 2 y2^2
    assert g.coeff((2, 0)) == 1
    assert g.coeff((1, 1)) == 3
    assert g.coeff((0, 2)) == 2


def test_substitute_rejects_constant_inner():
    f = _m({(1, 0): 1})
    bad = _m({(0, 0): 1, (1, 0): 1})
    with pytest.raises(InnerHasConstant):
        f.substitute((bad, _m({(0, 1): 1})))


def test_delta_i_weights_by_exponent():
    v = _m({(3, 2): 5, (1, 0): 1})
    assert delta_i(v, 0).coeff((3, 2)) == 15
    assert delta_i(v, 1).coeff((3, 2)) == 10
    assert delta_i(v, 1).coeff((1, 0)) == 0


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-4, 4), max_size=5))
def test_delta_i_product_rule(d):
    d = {k: v for k, v in d.items() if sum(k) > 0}
    u = _m(d, order=5)
    v = _m({(1, 0): 2, (0, 2): 3}, order=5)
    assert delta_i(u * v, 0) == delta_i(u, 0) * v + u * delta_i(v, 0)


def test_exp_log_roundtrip():
    v = _m({(1, 0): 1, (0, 1): Fraction(-1, 2), (1, 1): 3}, order=5)
    assert log_m(exp_m(v)) == v
    u = exp_m(v)
    assert exp_m(log_m(u)) == u
    assert exp_m(_m({})).constant_term == 1


def test_power_m_matches_products():
    v = _m({(1, 0): 2, (0, 1): 1, (0, 0): 1}, order=4)
    assert power_m(v, 3) == v * v * v
    assert power_m(v, -1) * v == _m({(0, 0): 1}, order=4)


def test_to_univariate_roundtrip():
    v = Series.from_coeffs(Q, 5, [1, 2, 3, 4, 5])
    m = MSeries.from_univariate(v)
    assert m.nvars == 1
    assert m.to_univariate() == v


def test_invert_map_closed_form():
    # G with G1 = -y1 exp(y2), G2 = y2 inverts (z1 e^{z2} with sign, z2)
    order = 6
    z1 = _m({(1, 0): 1}, order=order)
    z2 = _m({(0, 1): 1}, order=order)
    comp1 = z1 * exp_m(z2) * -1
    comp2 = z2
    g = invert_map((comp1, comp2))
    assert g[1] == z2
    assert g[0] == z1 * exp_m(-z2) * -1  # G1 = -y1 e^(-y2)
    # two-sided identity
    back = tuple(c.substitute(g) for c in (comp1, comp2))
    assert back[0] == z1 and back[1] == z2
    fwd = tuple(c.substitute((comp1, comp2)) for c in g)
    assert fwd[0] == z1 and fwd[1] == z2


def test_invert_map_rejects_bad_linear_part():
    z1 = _m({(1, 0): 1})
    z2 = _m({(0, 1): 1})
    with pytest.raises(BadLinearPart):
        invert_map((z1 * 2, z2))
    with pytest.raises(BadLinearPart):
        invert_map((z2, z2))
    with pytest.raises(DimensionMismatch):
        invert_map((z1,))


def test_invert_map_respects_signs():
    order = 5
    z1 = _m({(1, 0): 1}, order=order)
    z2 = _m({(0, 1): 1}, order=order)
    comp = (-z1 + z1 * z2, z2 - z2 * z1 * z1)
    g = invert_map(comp)
    back = tuple(c.substitute(g) for c in comp)
    assert back[0] == z1 and back[1] == z2


def test_invert_map_components_divisible_by_own_variable():
    z1 = _m({(1, 0): 1})
    z2 = _m({(0, 1): 1})
    with pytest.raises(BadLinearPart):
        invert_map((z1, z2 - z1 * z1))
