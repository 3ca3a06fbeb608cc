import itertools
import math

import mpmath
import numpy as np
import pytest

from appell_vertex.errors import QuadratureError
from appell_vertex.oracle import _rule, adaptive_square, f4_raw, triangle_feynman_param
from appell_vertex.special_functions import F4Params, Point2
from appell_vertex.vertex import Kinematics

# frozen golden values (the first is pi^2 (4/sqrt 3) Cl2(pi/3) from mpmath)
SYMMETRIC = 23.1334371987146892525152123766
ASYMMETRIC = 114.5434870862269  # (p2, q2, r2) = (1, 0.09, 0.04), checked with mpmath.quad


def test_symmetric_point_golden_value():
    value, err = triangle_feynman_param((1.0, 1.0, 1.0))
    assert value == pytest.approx(SYMMETRIC, rel=1e-12)
    assert err < 1e-8


def test_symmetric_point_closed_form():
    with mpmath.workdps(25):
        ref = float(mpmath.pi ** 2 * 4 / mpmath.sqrt(3) * mpmath.clsin(2, mpmath.pi / 3))
    assert triangle_feynman_param(Kinematics(1, 1, 1))[0] == pytest.approx(ref, rel=1e-12)


def test_asymmetric_golden_value():
    value, _ = triangle_feynman_param(Kinematics(1.0, 0.09, 0.04))
    assert value == pytest.approx(ASYMMETRIC, rel=1e-10)


def test_independent_mpmath_quadrature():
    p2, q2, r2 = 0.7, 2.3, 1.1
    with mpmath.workdps(20):
        def inner(x1):
            return mpmath.quad(lambda x2: 1 / (x1 * x2 * p2 + x1 * (1 - x1 - x2) * q2
                                              + x2 * (1 - x1 - x2) * r2), [0, 1 - x1])
        ref = float(mpmath.pi ** 2 * mpmath.quad(inner, [0, 1]))
    assert triangle_feynman_param((p2, q2, r2))[0] == pytest.approx(ref, rel=1e-9)


def test_all_six_permutations_agree_exactly():
    kin = Kinematics(0.3, 1.9, 0.8)
    vals = {triangle_feynman_param(kin.permuted(perm))[0]
            for perm in itertools.permutations(range(3))}
    assert len(vals) == 1


@pytest.mark.parametrize("lam", [0.5, 2.0, 10.0])
def test_scaling_law(lam):
    kin = Kinematics(1.0, 0.09, 0.04)
    base = triangle_feynman_param(kin)[0]
    assert triangle_feynman_param(kin.scaled(lam))[0] == pytest.approx(base / lam, rel=1e-12)


def test_refinement_is_stable():
    kin = Kinematics(1.0, 0.3, 2.0)
    coarse, cerr = triangle_feynman_param(kin, 1e-6)
    fine, ferr = triangle_feynman_param(kin, 1e-12)
    assert abs(coarse - fine) <= cerr + ferr
    assert ferr < cerr


def test_bad_kinematics_rejected():
    with pytest.raises(ValueError):
        triangle_feynman_param((1.0, -1.0, 1.0))
    with pytest.raises(ValueError):
        triangle_feynman_param((1.0, 1.0, 1.0), quad_tol=0.0)


@pytest.mark.parametrize("i, j", [(0, 0), (3, 7), (10, 12), (13, 13)])
def test_gauss_and_kronrod_agree_on_low_degree(i, j):
    # both embedded rules are exact up to degree 13, so no split happens
    value, err, regions = adaptive_square(lambda u, v: u ** i * v ** j, 1e-14)
    assert regions == 1
    assert value == pytest.approx(1.0 / ((i + 1) * (j + 1)), rel=1e-14)


@pytest.mark.parametrize("i, j", [(22, 0), (17, 22)])
def test_kronrod_rule_exact_to_degree_22(i, j):
    value, _ = _rule(lambda u, v: u ** i * v ** j, 0.0, 1.0, 0.0, 1.0)
    assert value == pytest.approx(1.0 / ((i + 1) * (j + 1)), rel=1e-13)


def test_cubature_budget_exhaustion():
    with pytest.raises(QuadratureError):
        adaptive_square(lambda u, v: 1.0 / np.sqrt(np.abs(u - 0.3) + 1e-14), 1e-14,
                        max_regions=20)


def test_f4_raw_small_cases():
    assert f4_raw(F4Params(1, 1, 1, 1), Point2(0.0, 0.0), terms=5) == 1.0
    # F4(a,b;c,c';x,0) = 2F1(a,b;c;x)
    with mpmath.workdps(30):
        ref = float(mpmath.hyp2f1(0.5, 1.5, 1.2, 0.3))
    assert f4_raw(F4Params(0.5, 1.5, 1.2, 0.9), Point2(0.3, 0.0), terms=100) == pytest.approx(
        ref, rel=1e-15)


def test_f4_raw_diverging_point_overflows():
    with pytest.raises(OverflowError):
        f4_raw(F4Params(1, 1, 1, 1), Point2(3.0, 3.0), terms=400)
    with pytest.raises(ValueError):
        f4_raw(F4Params(1, 1, 1, 1), Point2(0.1, 0.1), terms=0)
