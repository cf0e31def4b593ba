"""Executable checks of the convolution theorems for ``f_a * f_n`` and
``f_a * f_b``, with closed-form determinants as oracles."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import NumericalIntegrityError
from .geometry import jacobian_sign_scan, polyline_intersections, sample_image
from .harmonic import (
    DEFAULT_ORDER,
    DilatationRational,
    KernelSpec,
    convolve,
    convolve_half_plane_pair,
    dilatation_general,
    dilatation_monomial,
    dilatation_rational,
    f_a_closed_form,
    is_odd_pi,
    mobius_numerator,
    monomial_numerator,
    normalize_angle,
    series_dilatation_eval,
    shear_half_plane,
)
from .polynomial import (
    INCONCLUSIVE_TOL,
    ComplexPolynomial,
    ZeroLocationReport,
    cohn_chain,
    cohn_reduce,
    conjugate_reciprocal,
    count_zeros_unit_disk,
    evaluate,
    factor_out_root,
    schur_cohn_determinants,
    terminal_zero,
)
from .sampling import Circle, PolarGrid
from .series import order_for_radius

BOUNDARY_SLACK = 1e-12
CLOSED_FORM_RTOL = 1e-8
TERMINAL_ZERO_TOL = 1e-10
MAX_WITNESSES = 5
COR25_THRESHOLD = -3.0 + 2.0 * math.sqrt(2.0)

STATEMENTS = ("thm22", "thm24", "cor25", "remark22", "example23")
BRANCHES = ("generic", "identity_boundary", "odd_pi_chain", "schur_cohn")


@dataclass
class TheoremVerdict:
    statement_id: str
    params: dict
    branch: str
    passed: bool
    witnesses: list = field(default_factory=list)
    determinants: list = field(default_factory=list)
    max_modulus: float | None = None
    reports: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.statement_id not in STATEMENTS:
            raise ValueError(f"unknown statement {self.statement_id!r}")
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")

    def to_dict(self) -> dict:
        return {
            "statement_id": self.statement_id,
            "params": self.params,
            "branch": self.branch,
            "pass": bool(self.passed),
            "witnesses": [{"z": [complex(z).real, complex(z).imag], "modulus": float(m)}
                          for z, m in self.witnesses],
            "determinants": [float(m) for m in self.determinants],
            "max_modulus": None if self.max_modulus is None else float(self.max_modulus),
            "reports": [r.to_dict() for r in self.reports],
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def lower_bound_a(n: int) -> float:
    """Left end ``(n-2)/(n+2)`` of the admissible interval for ``a``."""
    return (n - 2) / (n + 2)


def closed_form_M(n: int, a: float, theta: float, k: int) -> float:
    """Closed-form Schur-Cohn determinant ``M_k`` of ``p`` for ``f_a * f_n``.

    ``k <= n``: ``(1/4)^k n^(k-1) (n+2k) s^k (1-a)^k`` with ``s = 2-n+2a+an``;
    ``k = n+1``: ``(1/4)^(n+1) n^n (1-a)^(n+1) s^(n+1) (4 + 4 cos theta)``.
    At ``n = 1`` these reduce to ``3/4 (1-a)(1+3a)`` and
    ``1/2 (1-a)^2 (1+3a)^2 cos^2(theta/2)``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not 1 <= k <= n + 1:
        raise ValueError(f"k={k} outside 1..{n + 1}")
    s = 2 - n + 2 * a + a * n
    if n == 1:
        if k == 1:
            return 0.75 * (1 - a) * (1 + 3 * a)
        return 0.5 * (1 - a) ** 2 * (1 + 3 * a) ** 2 * math.cos(theta / 2) ** 2
    if k <= n:
        return 0.25 ** k * n ** (k - 1) * (n + 2 * k) * s ** k * (1 - a) ** k
    return 0.25 ** (n + 1) * n ** n * (1 - a) ** (n + 1) * s ** (n + 1) * (4 + 4 * math.cos(theta))


# ---------------------------------------------------------------------------
# grid scans


def scan_rational(rational: DilatationRational, grid: PolarGrid | None = None):
    """Modulus of a rational dilatation over a polar grid.

    Returns ``(max_modulus, argmax, witnesses, skipped)`` where witnesses are
    the largest grid values exceeding 1 and ``skipped`` lists points where the
    denominator vanished.
    """
    grid = grid or PolarGrid()
    z = grid.points().ravel()
    den = evaluate(rational.denominator, z)
    ok = np.abs(den) >= 1e-12
    skipped = [complex(v) for v in z[~ok]]
    zz = z[ok]
    mod = np.abs(rational.phase * zz ** rational.monomial_power
                 * evaluate(rational.numerator, zz) / den[ok])
    k = int(np.argmax(mod))
    over = np.nonzero(mod > 1.0)[0]
    over = over[np.argsort(-mod[over])][:MAX_WITNESSES]
    witnesses = [(complex(zz[i]), float(mod[i])) for i in over]
    return float(mod[k]), complex(zz[k]), witnesses, skipped


def counterexample_scan(a: float, n: int, theta: float, grid: PolarGrid | None = None):
    """Maximum of ``|dilatation of f_a * f_n|`` over a polar grid (default
    64 radii up to 0.999 by 256 angles) and where it occurs."""
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    mx, arg, _, _ = scan_rational(dilatation_monomial(a, n, theta), grid)
    return mx, arg


# ---------------------------------------------------------------------------
# Theorem for f_a * f_n


def _closed_form_ok(m: float, expected: float, p: ComplexPolynomial, k: int) -> bool:
    floor = INCONCLUSIVE_TOL * p.scale ** (2 * k)
    return abs(m - expected) <= CLOSED_FORM_RTOL * abs(expected) + floor


def verify_theorem22(n: int, a: float, theta: float, grid: PolarGrid | None = None,
                     statement_id: str = "thm22", scan: bool = True) -> TheoremVerdict:
    """Check that the dilatation of ``f_a * f_n`` has modulus below 1.

    Dispatch: ``a = (n-2)/(n+2)`` checks ``p = e^{-i theta} p*``; ``theta = pi``
    splits off the zero ``z = 1`` and runs Cohn's chain on the cofactor;
    otherwise the Schur-Cohn determinants decide and are compared with
    :func:`closed_form_M`.
    """
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    n = int(n)
    theta = normalize_angle(theta)
    params = {"n": n, "a": float(a), "theta": theta}
    p = monomial_numerator(a, n, theta)
    rational = dilatation_monomial(a, n, theta)
    if not rational.is_self_reciprocal(tol=0.0):
        raise NumericalIntegrityError("denominator is not the conjugate-reciprocal of p")
    dets = schur_cohn_determinants(p)
    details: dict = {}
    reports: list[ZeroLocationReport] = []

    if abs(a - lower_bound_a(n)) <= BOUNDARY_SLACK:
        branch = "identity_boundary"
        defect = np.max(np.abs((p - np.exp(-1j * theta) * conjugate_reciprocal(p, n + 1)).coeffs))
        details["identity_defect"] = float(defect)
        passed = bool(defect <= 1e-12)
    elif is_odd_pi(theta):
        branch = "odd_pi_chain"
        q = factor_out_root(p, 1.0)
        chain, rep = cohn_chain(q)
        reports.append(rep)
        expected = -2.0 / (3 * n - 2) if n >= 2 else -0.5 * (1 - 3 * a)
        try:
            tz = terminal_zero(chain)
        except ValueError:
            tz = None
        details.update(
            cofactor=q.to_text(),
            chain_length=len(chain) - 1,
            terminal_zero=tz,
            expected_terminal_zero=expected,
        )
        in_range = a > lower_bound_a(n)
        tz_ok = tz is not None and abs(tz - expected) <= TERMINAL_ZERO_TOL
        details["terminal_zero_matches"] = bool(tz_ok)
        if in_range and rep.verdict == "all_inside" and not tz_ok:
            raise NumericalIntegrityError(
                f"terminal Cohn zero {tz} differs from the expected {expected}")
        passed = rep.verdict == "all_inside"
    else:
        branch = "schur_cohn"
        expected = [closed_form_M(n, a, theta, k) for k in range(1, n + 2)]
        matches = [_closed_form_ok(m, e, p, k) for k, (m, e) in enumerate(zip(dets, expected), 1)]
        details["closed_form"] = expected
        details["closed_form_matches"] = all(matches)
        if not all(matches):
            raise NumericalIntegrityError(
                "Schur-Cohn determinants disagree with the closed forms: "
                f"{dets} vs {expected}")
        rep = count_zeros_unit_disk(p, "auto")
        reports.append(rep)
        passed = rep.outside == 0

    verdict = TheoremVerdict(statement_id, params, branch, bool(passed),
                             determinants=dets, reports=reports, details=details)
    if scan:
        mx, arg, witnesses, skipped = scan_rational(rational, grid)
        verdict.max_modulus = mx
        details["argmax"] = arg
        if skipped:
            details["skipped_points"] = skipped
        if not passed:
            verdict.witnesses = witnesses
        elif mx > 1.0 + 1e-9:
            raise NumericalIntegrityError(
                f"verdict passed but the grid scan found |dilatation| = {mx} at {arg}")
    return verdict


def remark22_check(n: int, theta: float, grid: PolarGrid | None = None) -> TheoremVerdict:
    """``a = 0`` specialisation (``f_0 * f_n``)."""
    return verify_theorem22(n, 0.0, theta, grid, statement_id="remark22")


# ---------------------------------------------------------------------------
# Theorem for f_a * f_b


def theorem24_zero(a: float, b: float) -> float:
    """Zero ``(3/2)(a+b)/(1+ab) - 1/2`` of the reduced polynomial ``m_1``."""
    return 1.5 * (a + b) / (1 + a * b) - 0.5


def theorem24_threshold(a: float) -> float:
    """Smallest admissible ``b``: ``-(1+3a)/(3+a)``."""
    return -(1 + 3 * a) / (3 + a)


def verify_theorem24(a: float, b: float, grid: PolarGrid | None = None,
                     statement_id: str = "thm24", scan: bool = True) -> TheoremVerdict:
    """Check ``|dilatation of f_a * f_b| < 1`` through ``m(z)`` and one
    Cohn reduction; the zero of ``m_1`` decides."""
    if not (abs(a) < 1 and abs(b) < 1):
        raise ValueError("need |a| < 1 and |b| < 1")
    m = mobius_numerator(a, b)
    m1 = cohn_reduce(m)
    expected_m1 = ComplexPolynomial([0.5 * (1 - a * b) * (-3 * a - 3 * b + 1 + a * b),
                                     (1 - a * b) * (1 + a * b)])
    if not m1.allclose(expected_m1, 1e-12):
        raise NumericalIntegrityError(f"Cohn reduction of m gave {m1}, expected {expected_m1}")
    z0 = theorem24_zero(a, b)
    if abs(-m1.coeffs[0] / m1.coeffs[1] - z0) > 1e-12:
        raise NumericalIntegrityError("zero of m_1 differs from the closed form")
    passed = abs(z0) <= 1.0 + BOUNDARY_SLACK
    threshold = theorem24_threshold(a)
    criterion = b >= threshold - BOUNDARY_SLACK
    if passed != criterion and abs(b - threshold) > 1e-9:
        raise NumericalIntegrityError("|z0| <= 1 disagrees with b >= -(1+3a)/(3+a)")
    rep = count_zeros_unit_disk(m, "auto")
    oracle_pass = rep.outside == 0
    if oracle_pass != passed and abs(abs(z0) - 1.0) > 1e-6:
        raise NumericalIntegrityError("zero counting disagrees with the closed-form zero")
    details = {"z0": z0, "threshold_b": threshold, "criterion_holds": bool(criterion),
               "oracle_agrees": bool(oracle_pass == passed), "m": m.to_text()}
    verdict = TheoremVerdict(statement_id, {"a": float(a), "b": float(b)}, "generic",
                             bool(passed), determinants=list(rep.determinants) or
                             schur_cohn_determinants(m), reports=[rep], details=details)
    if scan:
        mx, arg, witnesses, skipped = scan_rational(dilatation_rational(a, KernelSpec.moebius(b)), grid)
        verdict.max_modulus = mx
        details["argmax"] = arg
        if skipped:
            details["skipped_points"] = skipped
        if not passed:
            verdict.witnesses = witnesses
    return verdict


def corollary25_check(a: float, grid: PolarGrid | None = None, scan: bool = True) -> TheoremVerdict:
    """``f_a * f_a``: admissible exactly for ``a >= -3 + 2 sqrt(2)``."""
    v = verify_theorem24(a, a, grid, statement_id="cor25", scan=scan)
    v.params = {"a": float(a)}
    v.details["threshold_a"] = COR25_THRESHOLD
    return v


def corollary25_threshold(lo: float = -0.9, hi: float = 0.0, tol: float = 1e-10) -> float:
    """Locate the pass/fail flip of ``verify_theorem24(a, a)`` by bisection."""
    f_lo = verify_theorem24(lo, lo, scan=False).passed
    f_hi = verify_theorem24(hi, hi, scan=False).passed
    if f_lo == f_hi:
        raise ValueError("bisection bracket does not straddle the threshold")
    while hi - lo > tol / 4:
        mid = 0.5 * (lo + hi)
        if verify_theorem24(mid, mid, scan=False).passed == f_hi:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# the a = -0.34, n = 1, theta = pi counterexample


EXAMPLE23 = {"a": -0.34, "n": 1, "theta": math.pi}


def example23_check(grid: PolarGrid | None = None, radii=(0.95, 0.975),
                    samples: int = 512) -> TheoremVerdict:
    """Reproduce the counterexample: displayed dilatation coefficients,
    grid excess over 1, a negative Jacobian and crossing circle images.

    ``passed`` is true when all four observations are reproduced.
    """
    a, n, theta = EXAMPLE23["a"], EXAMPLE23["n"], EXAMPLE23["theta"]
    rational = dilatation_monomial(a, n, theta)
    shown_num = np.array([-1.01, 0.01, 1.0])
    shown_den = np.array([1.0, 0.01, -1.01])
    coeff_err = max(
        float(np.max(np.abs(rational.numerator.coeffs - shown_num))),
        float(np.max(np.abs(rational.denominator.coeffs - shown_den))),
        abs(rational.phase - (-1.0)),
    )
    coeffs_ok = coeff_err <= 1e-12 and rational.monomial_power == 1
    mx, arg, witnesses, _ = scan_rational(rational, grid)

    r_top = max(radii)
    order = order_for_radius(r_top)
    fmap = convolve_half_plane_pair(a, shear_half_plane(KernelSpec.monomial(n, theta), order))
    jac = jacobian_sign_scan(fmap, PolarGrid(64, 256, r_top))
    curves = [sample_image(fmap, Circle(r), samples) for r in radii]
    crossings = polyline_intersections(curves[0], curves[1])

    details = {
        "coefficient_error": coeff_err,
        "coefficients_match": bool(coeffs_ok),
        "min_jacobian": jac.min_value,
        "min_jacobian_at": jac.location,
        "circle_radii": list(radii),
        "image_crossings": crossings[:MAX_WITNESSES],
        "crossing_count": len(crossings),
        "truncation_order": order,
    }
    passed = coeffs_ok and mx > 1.0 and jac.min_value < 0 and len(crossings) >= 1
    return TheoremVerdict("example23", dict(EXAMPLE23), "generic", bool(passed),
                          witnesses=witnesses, determinants=schur_cohn_determinants(rational.numerator),
                          max_modulus=mx, details=details)


# ---------------------------------------------------------------------------
# three-way agreement of dilatation formulas


def consistency_check(a: float, kernel: KernelSpec, points: int = 100,
                      order: int = DEFAULT_ORDER, radius: float = 0.7, seed: int = 0) -> float:
    """Largest pairwise gap between the general dilatation formula, the
    rational form and the series quotient ``g1'/h1'`` of the actual
    convolution, at random points with ``|z| <= radius``."""
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    rng = np.random.default_rng(seed)
    z = radius * np.sqrt(rng.uniform(size=points)) * np.exp(2j * np.pi * rng.uniform(size=points))
    general = dilatation_general(a, kernel.omega, kernel.omega_prime)(z)
    rational = dilatation_rational(a, kernel)(z)
    fmap = convolve(f_a_closed_form(a, order), shear_half_plane(kernel, order))
    series = series_dilatation_eval(fmap, z)
    gaps = [np.abs(general - rational), np.abs(general - series), np.abs(rational - series)]
    return float(max(np.max(g) for g in gaps))


def verdict_schema() -> dict:
    """JSON schema that every ``TheoremVerdict.to_dict()`` document satisfies."""
    text = resources.files("harmconv").joinpath("schemas/verdict.schema.json").read_text("utf-8")
    return json.loads(text)
