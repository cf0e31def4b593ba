import json
import math

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmconv.analysis import (
    COR25_THRESHOLD,
    closed_form_M,
    consistency_check,
    corollary25_check,
    corollary25_threshold,
    counterexample_scan,
    example23_check,
    lower_bound_a,
    remark22_check,
    theorem24_threshold,
    theorem24_zero,
    verdict_schema,
    verify_theorem22,
    verify_theorem24,
)
from harmconv.harmonic import (
    KernelSpec,
    convolve_half_plane_pair,
    dilatation_general,
    dilatation_rational,
    monomial_numerator,
    series_dilatation_eval,
    shear_half_plane,
)
from harmconv.polynomial import schur_cohn_determinants
from harmconv.sampling import PolarGrid

SCHEMA = verdict_schema()


def valid(v):
    jsonschema.validate(json.loads(json.dumps(v.to_dict())), SCHEMA)
    return v


# --- closed forms -------------------------------------------------------------------

def test_closed_form_n1():
    assert closed_form_M(1, 0.0, 0.0, 1) == pytest.approx(0.75)
    assert closed_form_M(1, 0.0, 0.0, 2) == pytest.approx(0.5)
    assert closed_form_M(1, 0.5, np.pi / 2, 1) == pytest.approx(0.9375)
    assert closed_form_M(1, 0.5, np.pi / 2, 2) == pytest.approx(0.390625)


def test_closed_form_n2_value():
    # (1/4)^2 * 2 * (2+4) * (2-2+1+1)^2 * (0.5)^2
    assert closed_form_M(2, 0.5, 1.0, 2) == pytest.approx(0.75)


@pytest.mark.parametrize("n", range(1, 9))
def test_closed_form_last_vanishes_at_pi(n):
    assert closed_form_M(n, 0.3, np.pi, n + 1) == pytest.approx(0, abs=1e-15)


def test_closed_form_range():
    with pytest.raises(ValueError):
        closed_form_M(3, 0.2, 1.0, 5)
    with pytest.raises(ValueError):
        closed_form_M(3, 0.2, 1.0, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.floats(-0.9, 0.95), st.floats(0, 2 * np.pi))
def test_closed_forms_match_numeric(n, a, theta):
    dets = schur_cohn_determinants(monomial_numerator(a, n, theta))
    for k, m in enumerate(dets, start=1):
        e = closed_form_M(n, a, theta, k)
        assert abs(m - e) <= 1e-8 * abs(e) + 1e-12


# --- theorem for f_a * f_n ----------------------------------------------------------

def test_thm22_generic_branch():
    v = valid(verify_theorem22(2, 0.2, 1.0))
    assert v.passed and v.branch == "schur_cohn"
    assert all(m > 0 for m in v.determinants)
    assert v.details["closed_form_matches"]
    assert v.max_modulus < 1


def test_thm22_odd_pi_n1():
    v = valid(verify_theorem22(1, 0.0, np.pi))
    assert v.passed and v.branch == "odd_pi_chain"
    assert v.details["terminal_zero"] == pytest.approx(-0.5)


@pytest.mark.parametrize("n", range(2, 13))
def test_thm22_odd_pi_terminal_zero(n):
    a = 0.5 * (lower_bound_a(n) + 1)
    v = verify_theorem22(n, a, np.pi, scan=False)
    assert v.passed and v.details["terminal_zero_matches"]
    assert abs(v.details["terminal_zero"] + 2 / (3 * n - 2)) < 1e-10


@pytest.mark.parametrize("n", range(1, 9))
def test_thm22_boundary_identity(n):
    v = valid(verify_theorem22(n, lower_bound_a(n), 2.0))
    assert v.passed and v.branch == "identity_boundary"
    assert v.details["identity_defect"] <= 1e-12


def test_thm22_boundary_scan_is_power_of_radius():
    n = 3
    mx, _ = counterexample_scan(lower_bound_a(n), n, 1.0)
    assert mx == pytest.approx(0.999 ** n, rel=1e-12)


def test_thm22_counterexample():
    v = valid(verify_theorem22(1, -0.34, np.pi))
    assert not v.passed
    assert v.witnesses and all(m > 1 for _, m in v.witnesses)
    assert v.max_modulus > 1


def test_thm22_rejects():
    with pytest.raises(ValueError):
        verify_theorem22(2, 1.0, 0.0)
    with pytest.raises(ValueError):
        verify_theorem22(0, 0.5, 0.0)


def test_thm22_monotone_in_a():
    for n in range(1, 9):
        lo = lower_bound_a(n)
        for a in np.linspace(lo, 0.97, 20):
            assert verify_theorem22(n, float(a), 0.7, scan=False).passed


def test_counterexample_scan_values():
    assert counterexample_scan(-0.34, 1, np.pi)[0] > 1
    assert counterexample_scan(0.0, 1, np.pi)[0] < 1


# --- Remark: a = 0 ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2])
def test_remark_a0_passes(n):
    for theta in np.linspace(0, 2 * np.pi, 8, endpoint=False):
        assert valid(remark22_check(n, float(theta))).passed


def test_remark_a0_fails_n3():
    v = remark22_check(3, np.pi)
    assert not v.passed
    assert v.max_modulus > 1


# --- theorem for f_a * f_b ----------------------------------------------------------

def test_thm24_examples():
    v = valid(verify_theorem24(0.0, 0.0))
    assert v.passed and v.details["z0"] == pytest.approx(-0.5)
    a = 0.4
    v = valid(verify_theorem24(a, theorem24_threshold(a)))
    assert v.passed and abs(abs(v.details["z0"]) - 1) < 1e-10
    v = valid(verify_theorem24(0.5, -0.9))
    assert not v.passed and abs(v.details["z0"]) > 1 and v.witnesses


def test_thm24_zero_on_threshold_curve():
    for a in np.linspace(-0.9, 0.9, 19):
        assert theorem24_zero(a, theorem24_threshold(a)) == pytest.approx(-1, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95))
def test_thm24_criterion_equivalence(a, b):
    t = theorem24_threshold(a)
    if abs(b - t) < 1e-6:
        return
    v = verify_theorem24(a, b, scan=False)
    assert v.passed == (b > t)
    assert v.details["oracle_agrees"]


def test_thm24_passing_scan_below_one():
    v = verify_theorem24(0.3, 0.2, grid=PolarGrid(16, 64, 0.99))
    assert v.passed and v.max_modulus < 1


# --- corollary: f_a * f_a ------------------------------------------------------------

def test_cor25_examples():
    assert valid(corollary25_check(COR25_THRESHOLD)).passed
    assert corollary25_check(0.0).passed
    assert not corollary25_check(-0.2).passed


def test_cor25_bisection():
    assert abs(corollary25_threshold() - (-3 + 2 * math.sqrt(2))) < 1e-10


def test_cor25_bad_bracket():
    with pytest.raises(ValueError):
        corollary25_threshold(0.0, 0.5)


# --- example and consistency ------------------------------------------------------------

def test_example23():
    v = valid(example23_check())
    assert v.passed
    assert v.details["coefficient_error"] <= 1e-12
    assert v.max_modulus > 1
    assert v.details["min_jacobian"] < 0
    assert v.details["crossing_count"] >= 1


@pytest.mark.parametrize("a,kernel", [
    (0.3, KernelSpec.monomial(2, 1.0)),
    (0.0, KernelSpec.moebius(0.0)),
    (0.0, KernelSpec.monomial(2, 0.5)),
    (0.2, KernelSpec.monomial(3, 2.5)),
])
def test_consistency(a, kernel):
    assert consistency_check(a, kernel) <= 1e-7


def test_boundary_paths_have_power_modulus():
    n = 4
    a, kernel = lower_bound_a(n), KernelSpec.monomial(n, 1.1)
    z = 0.7 * np.exp(2j * np.pi * np.linspace(0, 1, 50)) * np.linspace(0.1, 1, 50)
    paths = [
        dilatation_general(a, kernel.omega, kernel.omega_prime)(z),
        dilatation_rational(a, kernel)(z),
        series_dilatation_eval(convolve_half_plane_pair(a, shear_half_plane(kernel)), z),
    ]
    for w in paths:
        np.testing.assert_allclose(np.abs(w), np.abs(z) ** n, atol=1e-7)
    assert consistency_check(a, kernel) <= 1e-7
