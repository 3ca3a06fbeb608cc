import math

import pytest

from appell_vertex.errors import PoleError
from appell_vertex.selfenergy import (
    bubble,
    flying_saucer,
    flying_saucer_power,
    sequential_composition_check,
)


def test_bubble_symmetric_in_exponents():
    assert bubble(1.3, 0.6, 2.2) == pytest.approx(bubble(0.6, 1.3, 2.2), rel=1e-15)


def test_bubble_known_value():
    # G(1,1) at omega = 3/2 (D=3) is Gamma(1/2)^3 / Gamma(1) = pi^(3/2)
    assert bubble(1, 1, 1.5) == pytest.approx(math.pi ** 1.5, rel=1e-14)


def test_bubble_ultraviolet_pole():
    with pytest.raises(PoleError, match="a\\+b-omega"):
        bubble(1, 1, 2.0)


@pytest.mark.parametrize("a", [1, 2])
@pytest.mark.parametrize("omega", [1.7, 1.9, 2.1, 2.3, 2.6])
def test_nested_bubbles_equal_closed_form(a, omega):
    rep = sequential_composition_check(a, omega)
    assert rep.rel_error < 1e-12
    assert rep.composed_power == pytest.approx(flying_saucer_power(a, omega), abs=1e-14)
    assert rep.homogeneous


def test_ledger_records_both_stages():
    rep = sequential_composition_check(2, 2.3)
    inner, outer = rep.stages
    assert (inner.loop_momentum, inner.result_momentum) == ("q", "k")
    assert inner.result_power == pytest.approx(0.3)
    assert outer.exponents == pytest.approx((2 - 0.3, 1.0))
    assert outer.result_power == pytest.approx(2 * 2.3 - 5)


def test_flying_saucer_rejects_other_exponents():
    with pytest.raises(ValueError):
        flying_saucer(3, 2.2)
