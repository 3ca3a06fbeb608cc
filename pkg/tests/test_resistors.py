import pytest
from hypothesis import given, settings, strategies as st

from appell_vertex.resistors import (
    DeltaNetwork,
    LegCurrents,
    YNetwork,
    delta_to_y,
    power_ratio_system,
    scaled_current_check,
    y_power,
    y_to_delta,
)

resistance = st.floats(min_value=1e-3, max_value=1e3)
current = st.floats(min_value=-10, max_value=10).filter(lambda v: abs(v) > 1e-3)


def test_golden_y_to_delta():
    d = y_to_delta(YNetwork(1, 2, 3))
    assert (d.ra, d.rb, d.rc) == pytest.approx((11.0, 5.5, 11.0 / 3.0), rel=1e-15)


def test_golden_delta_to_y():
    y = delta_to_y(DeltaNetwork(11.0, 5.5, 11.0 / 3.0))
    assert (y.r1, y.r2, y.r3) == pytest.approx((1.0, 2.0, 3.0), rel=1e-15)


def test_networks_reject_nonpositive():
    with pytest.raises(ValueError):
        YNetwork(1, 0, 2)
    with pytest.raises(ValueError):
        DeltaNetwork(1, 2, float("inf"))


@settings(max_examples=200, deadline=None)
@given(resistance, resistance, resistance)
def test_round_trip(r1, r2, r3):
    back = delta_to_y(y_to_delta(YNetwork(r1, r2, r3)))
    assert (back.r1, back.r2, back.r3) == pytest.approx((r1, r2, r3), rel=1e-12)


def test_current_conservation_enforced():
    with pytest.raises(ValueError):
        LegCurrents(1.0, 2.0, 3.0)
    assert LegCurrents.from_pq(1.0, 2.5).r == 1.5


@settings(max_examples=200, deadline=None)
@given(current, current)
def test_ratio_identities(p, q):
    if abs(q - p) < 1e-3:
        return
    ratios = power_ratio_system(LegCurrents.from_pq(p, q))
    assert ratios.y * ratios.z / ratios.x == pytest.approx(1.0, rel=1e-12)


def test_zero_current_rejected():
    with pytest.raises(ValueError):
        power_ratio_system(LegCurrents.from_pq(1.0, 1.0))


def test_y_power():
    assert y_power(YNetwork(1, 2, 3), LegCurrents.from_pq(1.0, 3.0)) == 1 + 18 + 12


def test_scaled_current_pattern():
    rep = scaled_current_check(YNetwork(1.0, 2.0, 3.0), LegCurrents.from_pq(1.0, 0.3))
    assert rep["legs_sum_to_R_a"]
    assert rep["R_a"] == pytest.approx(11.0)
    assert rep["p_a_equals_p"]
    assert rep["current_weights"] == pytest.approx((1.0, rep["y"], rep["z"]))
    assert rep["I_a_squared"] * rep["R_a"] == pytest.approx(rep["power_a"])


def test_symmetric_delta_inverse():
    y = delta_to_y(DeltaNetwork(6.0, 6.0, 6.0))
    assert (y.r1, y.r2, y.r3) == pytest.approx((2.0, 2.0, 2.0), rel=1e-15)


def test_near_zero_leg_round_trip():
    d = y_to_delta(YNetwork(1e-9, 2.0, 3.0))
    assert d.ra > 1e9
    back = delta_to_y(d)
    assert (back.r1, back.r2, back.r3) == pytest.approx((1e-9, 2.0, 3.0), rel=1e-6)


def test_power_examples():
    net = YNetwork(1.0, 1.0, 1.0)
    assert y_power(net, LegCurrents(1.0, 2.0, 1.0)) == 6.0
    dead = y_power(YNetwork(1.5, 2.5, 7.0), LegCurrents.from_pq(3.0, 3.0))
    assert dead == pytest.approx(9.0 * 4.0)
    scaled = y_power(YNetwork(1.5, 2.5, 7.0), LegCurrents.from_pq(3.0, -2.0))
    assert y_power(YNetwork(1.5, 2.5, 7.0), LegCurrents.from_pq(6.0, -4.0)) == pytest.approx(
        4 * scaled)


def test_ratio_example():
    r = power_ratio_system(LegCurrents(1.0, 2.0, 1.0))
    assert (r.x, r.y, r.z) == (1.0, 4.0, 0.25)


def test_symmetric_y_scaled_current_value():
    rep = scaled_current_check(YNetwork(1.0, 1.0, 1.0), LegCurrents(1.0, 2.0, 1.0))
    # p_a^2 R2R3/R1 + y q^2 R2 + z r^2 R3 = 1 + 16 + 0.25 with R_a = 3
    assert rep["power_a"] == pytest.approx(17.25)
    assert rep["I_a_squared"] == pytest.approx(17.25 / 3)
