import math

import pytest

from appell_vertex.errors import DegenerateParameterError, DomainError, PoleError
from appell_vertex.special_functions import F4Params
from appell_vertex.vertex import (
    EUCLIDEAN_NORMALIZATION,
    FORMS,
    Kinematics,
    OmegaParam,
    coeff_ABCD,
    four_term_params,
    match_normalization,
    printed_prefactor_layout,
    pole_cancellation_probe,
    reduce_four_to_three,
    reduction_target,
    richardson,
    triangle_four_term,
    triangle_sym_check,
    triangle_three_term_paper,
)

KIN = Kinematics.from_ratios(0.04, 0.09)


def test_kinematics_ratios_and_validation():
    kin = Kinematics(2.0, 0.5, 0.1)
    assert (kin.x, kin.y, kin.z) == pytest.approx((0.05, 0.25, 0.2))
    assert kin.z == pytest.approx(kin.x / kin.y)
    assert Kinematics.from_ratios(0.05, 0.25, 2.0).squares() == pytest.approx(kin.squares())
    with pytest.raises(ValueError):
        Kinematics(1.0, 0.0, 1.0)
    assert OmegaParam(2.3).D == pytest.approx(4.6)


def test_coefficient_identities():
    A, B, C, D = coeff_ABCD(2.3)
    assert B == C
    assert B == pytest.approx(-A, rel=1e-14)
    assert D > 0


@pytest.mark.parametrize("omega", [2.0, 3.0, 1.5])
def test_coefficients_hit_poles(omega):
    with pytest.raises(PoleError):
        coeff_ABCD(omega)


def test_four_term_parameter_sets():
    g = 0.7
    params = four_term_params(2.3)
    assert params["A"].same_function(F4Params(1, g, g, g))
    assert params["B"].same_function(F4Params(2 - g, 1, 2 - g, g))
    assert params["C"].same_function(F4Params(2 - g, 1, g, 2 - g))
    assert params["D"].same_function(F4Params(3 - 2 * g, 2 - g, 2 - g, 2 - g))


def test_symmetric_point_is_outside_the_four_term_domain():
    with pytest.raises(DomainError):
        triangle_four_term(Kinematics(1, 1, 1), 2.3)


def test_four_term_is_symmetric_under_q_r_exchange():
    kin = Kinematics(1.3, 0.2, 0.05)
    swapped = kin.permuted((0, 2, 1))
    a = triangle_four_term(kin, 2.2).value
    b = triangle_four_term(swapped, 2.2).value
    assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.parametrize("omega", [1.7, 2.3, 2.6])
def test_four_term_scaling_law(omega):
    lam = 3.0
    base = triangle_four_term(KIN, omega).value
    scaled = triangle_four_term(KIN.scaled(lam), omega).value
    assert scaled == pytest.approx(lam ** (omega - 3) * base, rel=1e-13)


def test_normalization_matches_d4_oracle():
    assert EUCLIDEAN_NORMALIZATION == 1.0
    assert match_normalization(KIN) == pytest.approx(1.0, abs=1e-6)


def test_include_pi_switch():
    with_pi = triangle_four_term(KIN, 2.3)
    without = triangle_four_term(KIN, 2.3, include_pi=False)
    assert with_pi.value == pytest.approx(math.pi ** 2.3 * without.value, rel=1e-15)


@pytest.mark.parametrize("omega", [2.2, 2.3, 2.45, 1.8])
def test_reduction_reproduces_four_term(omega):
    four = triangle_four_term(KIN, omega)
    red = reduce_four_to_three(KIN, omega)
    assert len(red.terms) == 3
    assert red.value == pytest.approx(four.value, rel=1e-12)
    folded = red.terms[2]
    assert folded.conjugate_pair and folded.method == "continued"
    assert folded.params == reduction_target(omega)
    assert folded.point.x == pytest.approx(KIN.z) and folded.point.y == pytest.approx(1 / KIN.y)


def test_reduction_coefficient_is_complex_and_matches_printed_real_part():
    red = reduce_four_to_three(KIN, 2.3)
    omega_coeff = red.terms[2].coeff
    gam_r = -coeff_ABCD(2.3)[0]
    assert 2 * omega_coeff.real == pytest.approx(gam_r, rel=1e-10)
    assert abs(omega_coeff.imag) > 1e-3 * abs(omega_coeff.real)


def test_reduction_is_degenerate_at_omega_five_halves():
    with pytest.raises(DegenerateParameterError):
        reduce_four_to_three(KIN, 2.5)


def test_printed_three_term_form_structure():
    val = triangle_three_term_paper(KIN, 2.3)
    assert [t.label for t in val.terms] == ["p", "q", "r"]
    assert [t.weight for t in val.terms] == pytest.approx([1.0, KIN.y, KIN.z])
    assert [t.scale for t in val.terms] == pytest.approx(list(KIN.squares()))
    assert [t.method for t in val.terms][:2] == ["series", "series"]
    assert val.terms[2].method.startswith("continued")
    assert [w for _, _, w in printed_prefactor_layout(KIN)] == pytest.approx([1.0, KIN.y, KIN.z])


def test_printed_three_term_form_disagrees_with_four_term():
    truth = triangle_four_term(KIN, 2.3).value
    printed = triangle_three_term_paper(KIN, 2.3).value
    assert abs(printed - truth) / abs(truth) > 0.1


def test_printed_form_strict_mode_refuses_the_third_term():
    with pytest.raises(DomainError, match="term r"):
        triangle_three_term_paper(KIN, 2.3, continuation="none")
    with pytest.raises(ValueError):
        triangle_three_term_paper(KIN, 2.3, continuation="bogus")


def test_forms_registry():
    assert set(FORMS) == {"four", "reduced", "paper3"}


def test_symmetry_report():
    rep = triangle_sym_check(Kinematics(1.0, 0.09, 0.04), 2.2, quad_tol=1e-9)
    assert rep["oracle_symmetric"]
    assert rep["closed_form_evaluated"] == 2  # only (x, y) and (y, x) labellings converge
    assert rep["closed_form_symmetric"]
    assert list(rep["closed_form"].values()).count("domain") == 4


def test_richardson_exact_for_quadratics():
    steps = [0.4, 0.2, 0.1]
    vals = [3 + 2 * h - 5 * h * h for h in steps]
    assert richardson(steps, vals) == pytest.approx(3.0, rel=1e-14)


def test_pole_cancellation_probe():
    probe = pole_cancellation_probe(KIN)
    assert probe.contracting
    assert all(r > 3.0 for r in probe.growth_ratios)  # double pole: ~4 per halving
    assert probe.oracle_rel_error < 1e-4
    assert abs(probe.extrapolated_plain - probe.oracle) / probe.oracle < 1e-2
    for ratios in probe.term_ratios.values():
        assert all(r > 1 for r in ratios)


def test_pole_probe_validates_ladder():
    with pytest.raises(ValueError):
        pole_cancellation_probe(KIN, deltas=(0.05, 0.1), oracle_tol=None)
