"""Right half-plane harmonic maps, their Hadamard convolutions and dilatations.

A map ``f = h + conj(g)`` is stored through the Taylor series of ``h`` and
``g``.  Every shear built here satisfies ``h + g = z/(1 - z)``, i.e.
``h_k + g_k = 1`` for ``k >= 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularPointError
from .polynomial import ComplexPolynomial, conjugate_reciprocal, evaluate
from .series import PowerSeries

DEFAULT_ORDER = 256
SERIES_RADIUS_CAP = 0.999
DENOM_TOL = 1e-12
ODD_PI_TOL = 1e-12
TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    t = math.fmod(float(theta), TWO_PI)
    if t < 0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


def is_odd_pi(theta: float) -> bool:
    """True when ``theta`` is congruent to ``pi`` modulo ``2*pi``."""
    return abs(normalize_angle(theta) - math.pi) <= ODD_PI_TOL


_THETA_RE = re.compile(r"^([+-]?\d*\.?\d*(?:e[+-]?\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    """Radians from ``"pi"``, ``"pi/2"``, ``"-3pi/4"``, ``"2*pi"`` or a decimal."""
    s = text.strip().lower().replace(" ", "")
    m = _THETA_RE.match(s)
    if m:
        mult = m.group(1)
        if mult in ("", "+"):
            k = 1.0
        elif mult == "-":
            k = -1.0
        else:
            k = float(mult)
        div = float(m.group(2)) if m.group(2) else 1.0
        return k * math.pi / div
    try:
        return float(s)
    except ValueError:
        raise ValueError(f"malformed angle {text!r}") from None


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelSpec:
    """Dilatation of a half-plane shear.

    ``monomial``: ``omega(z) = exp(i*theta) * z**n``;
    ``moebius``: ``omega(z) = (b - z) / (1 - b*z)``.
    """

    family: str
    n: int = 1
    theta: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.family == "monomial":
            if int(self.n) != self.n or self.n < 1:
                raise ValueError("monomial kernel needs a positive integer n")
            object.__setattr__(self, "n", int(self.n))
            object.__setattr__(self, "theta", normalize_angle(self.theta))
        elif self.family == "moebius":
            if not abs(self.b) < 1:
                raise ValueError("moebius kernel needs |b| < 1")
            object.__setattr__(self, "b", float(self.b))
        else:
            raise ValueError(f"unknown kernel family {self.family!r}")

    @classmethod
    def monomial(cls, n: int, theta: float) -> "KernelSpec":
        return cls("monomial", n=n, theta=theta)

    @classmethod
    def moebius(cls, b: float) -> "KernelSpec":
        return cls("moebius", b=b)

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """``"monomial:n=2,theta=pi"`` or ``"moebius:b=0.5"``."""
        try:
            family, _, rest = text.partition(":")
            kv = dict(item.split("=", 1) for item in rest.split(",") if item)
            family = family.strip()
            if family == "monomial":
                return cls.monomial(int(kv.pop("n")), parse_angle(kv.pop("theta", "0")))
            if family == "moebius":
                return cls.moebius(float(kv.pop("b")))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed kernel {text!r}: {exc}") from None
        raise ValueError(f"malformed kernel {text!r}")

    def to_text(self) -> str:
        if self.family == "monomial":
            return f"monomial:n={self.n},theta={self.theta!r}"
        return f"moebius:b={self.b!r}"

    def omega(self, z):
        z = np.asarray(z, dtype=complex)
        if self.family == "monomial":
            return np.exp(1j * self.theta) * z ** self.n
        return (self.b - z) / (1.0 - self.b * z)

    def omega_prime(self, z):
        z = np.asarray(z, dtype=complex)
        if self.family == "monomial":
            return self.n * np.exp(1j * self.theta) * z ** (self.n - 1)
        return (self.b ** 2 - 1.0) / (1.0 - self.b * z) ** 2

    def series(self, order: int) -> PowerSeries:
        if self.family == "monomial":
            return PowerSeries.monomial(self.n, order, np.exp(1j * self.theta))
        # (b - z) * sum (b z)^k
        geo = PowerSeries.geometric(order, self.b)
        return geo * self.b - geo.mul_z()


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class HarmonicMap:
    """``f = h + conj(g)`` given by truncated series of ``h`` and ``g``.

    ``closed_form`` is an informational tag: ``("f_a", a)``, ``("f_0",)`` or
    ``("sheared", KernelSpec)``.
    """

    h: PowerSeries
    g: PowerSeries
    closed_form: tuple | None = None

    def __post_init__(self):
        n = min(self.h.order, self.g.order)
        if self.h.order != n:
            object.__setattr__(self, "h", self.h.truncate(n))
        if self.g.order != n:
            object.__setattr__(self, "g", self.g.truncate(n))

    @property
    def order(self) -> int:
        return self.h.order

    def __call__(self, z):
        z = _check_radius(z)
        return self.h(z) + np.conj(self.g(z))

    def h_prime(self, z):
        return self.h.derivative()(z)

    def g_prime(self, z):
        return self.g.derivative()(z)

    def jacobian(self, z):
        z = _check_radius(z)
        return np.abs(self.h_prime(z)) ** 2 - np.abs(self.g_prime(z)) ** 2

    def shear_defect(self) -> float:
        """``max_k |h_k + g_k - 1|`` over ``k >= 1``; zero for half-plane shears."""
        s = self.h.coeffs[1:] + self.g.coeffs[1:]
        return float(np.max(np.abs(s - 1.0))) if s.size else 0.0

    def is_half_plane_shear(self, tol: float = 1e-12) -> bool:
        return (abs(self.h[0]) <= tol and abs(self.g[0]) <= tol
                and self.shear_defect() <= tol * max(1, self.order))

    def renormalized(self) -> "HarmonicMap":
        """Divide both parts by ``h'(0)`` so that the map is normalized."""
        d = self.h[1]
        if abs(d) < DENOM_TOL:
            raise SingularPointError("h'(0) vanishes; cannot renormalize", 0j)
        return HarmonicMap(self.h / d, self.g / d, None)

    def to_dict(self) -> dict:
        tag = None
        if self.closed_form:
            kind, *rest = self.closed_form
            if kind == "sheared":
                tag = {"kind": kind, "kernel": rest[0].to_text()}
            elif kind == "f_a":
                tag = {"kind": kind, "a": rest[0]}
            else:
                tag = {"kind": kind}
        return {
            "N": self.order,
            "h": [[c.real, c.imag] for c in self.h.coeffs],
            "g": [[c.real, c.imag] for c in self.g.coeffs],
            "closed_form": tag,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HarmonicMap":
        h = PowerSeries([complex(re_, im) for re_, im in d["h"]])
        g = PowerSeries([complex(re_, im) for re_, im in d["g"]])
        if len(h) != d["N"] + 1 or len(g) != d["N"] + 1:
            raise ValueError("coefficient count does not match N")
        tag = d.get("closed_form")
        closed = None
        if tag:
            if tag["kind"] == "sheared":
                closed = ("sheared", KernelSpec.parse(tag["kernel"]))
            elif tag["kind"] == "f_a":
                closed = ("f_a", float(tag["a"]))
            else:
                closed = (tag["kind"],)
        return cls(h, g, closed)


def _check_radius(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > SERIES_RADIUS_CAP + 1e-15):
        raise ValueError(f"series evaluation is capped at |z| <= {SERIES_RADIUS_CAP}")
    return z


def _half_plane_sum(order: int) -> PowerSeries:
    c = np.ones(order + 1, dtype=complex)
    c[0] = 0
    return PowerSeries(c)


def shear_half_plane(kernel: KernelSpec, order: int = DEFAULT_ORDER) -> HarmonicMap:
    """Shear ``h + g = z/(1-z)`` with dilatation ``kernel``.

    ``h' = 1 / ((1 + omega) (1 - z)**2)``, integrated with ``h(0) = 0``; then
    ``g = z/(1-z) - h``.
    """
    if order < 8:
        raise ValueError("truncation order must be at least 8")
    one_plus = kernel.series(order - 1) + 1.0
    hp = one_plus.inverse().cumulative().cumulative()
    h = hp.integral()
    g = _half_plane_sum(order) - h
    return HarmonicMap(h, g, ("sheared", kernel))


def f_a_closed_form(a: float, order: int = DEFAULT_ORDER) -> HarmonicMap:
    """Series of ``h_a = (z/(1+a) - z**2/2) / (1-z)**2`` and its partner.

    Coefficients: ``h_k = k/(1+a) - (k-1)/2`` and ``g_k = k*a/(1+a) - (k-1)/2``.
    """
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    k = np.arange(order + 1, dtype=float)
    h = k / (1 + a) - (k - 1) / 2
    g = k * a / (1 + a) - (k - 1) / 2
    h[0] = g[0] = 0.0
    tag = ("f_0",) if a == 0 else ("f_a", float(a))
    return HarmonicMap(PowerSeries(h), PowerSeries(g), tag)


def convolve(F: HarmonicMap, f: HarmonicMap) -> HarmonicMap:
    """Hadamard product applied separately to analytic and co-analytic parts."""
    return HarmonicMap(F.h.hadamard(f.h), F.g.hadamard(f.g))


def convolve_half_plane_pair(a: float, f: HarmonicMap) -> HarmonicMap:
    """``f_a * f`` via ``h1 = (h + c z h')/2`` and ``g1 = (g - c z g')/2``,
    ``c = (1-a)/(1+a)``.  ``f`` must be a half-plane shear."""
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    if not f.is_half_plane_shear(tol=1e-10):
        raise ValueError("f is not a half-plane shear (h + g != z/(1-z))")
    c = (1 - a) / (1 + a)
    k = np.arange(f.order + 1)
    h1 = 0.5 * f.h.coeffs * (1 + c * k)
    g1 = 0.5 * f.g.coeffs * (1 - c * k)
    return HarmonicMap(PowerSeries(h1), PowerSeries(g1))


# ---------------------------------------------------------------------------
# dilatations


def dilatation_general(a: float, omega: Callable, omega_prime: Callable) -> Callable:
    """Evaluator of the dilatation of ``f_a * f`` from that of ``f``:

    ``[2w(a-z)(1+w) + z w'(a-1)(1-z)] / [2(1-az)(1+w) + z w'(a-1)(1-z)]``.
    """
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")

    def evaluator(z):
        z = np.asarray(z, dtype=complex)
        w = omega(z)
        wp = omega_prime(z)
        common = z * wp * (a - 1) * (1 - z)
        num = 2 * w * (a - z) * (1 + w) + common
        den = 2 * (1 - a * z) * (1 + w) + common
        bad = np.abs(den) < DENOM_TOL
        if np.any(bad):
            zb = complex(np.atleast_1d(z)[np.atleast_1d(bad)][0])
            raise SingularPointError(f"denominator vanishes at z={zb}", zb)
        out = num / den
        return complex(out) if out.ndim == 0 else out

    return evaluator


@dataclass(frozen=True)
class DilatationRational:
    """``phase * z**monomial_power * numerator(z) / denominator(z)``."""

    phase: complex
    monomial_power: int
    numerator: ComplexPolynomial
    denominator: ComplexPolynomial

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        den = evaluate(self.denominator, z)
        bad = np.abs(den) < DENOM_TOL
        if np.any(bad):
            zb = complex(np.atleast_1d(z)[np.atleast_1d(bad)][0])
            raise SingularPointError(f"denominator vanishes at z={zb}", zb)
        out = self.phase * z ** self.monomial_power * evaluate(self.numerator, z) / den
        return complex(out) if np.ndim(out) == 0 else out

    def is_self_reciprocal(self, tol: float = 0.0) -> bool:
        """Denominator equals the conjugate-reciprocal of the numerator."""
        star = conjugate_reciprocal(self.numerator)
        return self.denominator.allclose(star, tol)

    def to_dict(self) -> dict:
        return {
            "phase": [float(self.phase.real), float(self.phase.imag)],
            "monomial_power": int(self.monomial_power),
            "numerator": [[float(c.real), float(c.imag)] for c in self.numerator.coeffs],
            "denominator": [[float(c.real), float(c.imag)] for c in self.denominator.coeffs],
        }


def monomial_numerator(a: float, n: int, theta: float) -> ComplexPolynomial:
    """``p(z) = z^(n+1) - a z^n + (2+an-n)/2 e^{-i theta} z + (n-2a-an)/2 e^{-i theta}``.

    For ``n = 1`` the ``z^n`` and ``z`` terms share a coefficient and add.
    """
    e = np.exp(-1j * theta)
    c = np.zeros(n + 2, dtype=complex)
    c[n + 1] += 1.0
    c[n] += -a
    c[1] += 0.5 * (2 + a * n - n) * e
    c[0] += 0.5 * (n - 2 * a - a * n) * e
    return ComplexPolynomial(c)


def dilatation_monomial(a: float, n: int, theta: float) -> DilatationRational:
    """Dilatation of ``f_a * f_n`` where ``f_n`` has ``omega = e^{i theta} z^n``:
    ``-e^{2 i theta} z^n p(z) / p*(z)``."""
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    p = monomial_numerator(a, n, theta)
    return DilatationRational(-np.exp(2j * theta), n, p, conjugate_reciprocal(p, n + 1))


def mobius_numerator(a: float, b: float) -> ComplexPolynomial:
    """``m(z) = z^2 + (ab - 3a - 3b + 1)/2 z + ab``."""
    return ComplexPolynomial([a * b, 0.5 * (a * b - 3 * a - 3 * b + 1), 1.0])


def dilatation_mobius(a: float, b: float) -> DilatationRational:
    """Dilatation ``m(z) / m*(z)`` of ``f_a * f_b``."""
    if not (abs(a) < 1 and abs(b) < 1):
        raise ValueError("need |a| < 1 and |b| < 1")
    m = mobius_numerator(a, b)
    return DilatationRational(1.0 + 0j, 0, m, conjugate_reciprocal(m, 2))


def dilatation_rational(a: float, kernel: KernelSpec) -> DilatationRational:
    if kernel.family == "monomial":
        return dilatation_monomial(a, kernel.n, kernel.theta)
    return dilatation_mobius(a, kernel.b)


def series_dilatation_eval(f: HarmonicMap, z):
    """``g'(z) / h'(z)`` from the truncated series (error ``O(|z|^N)``)."""
    z = _check_radius(z)
    hp = f.h_prime(z)
    if np.any(np.abs(hp) < DENOM_TOL):
        zb = complex(np.atleast_1d(z)[np.atleast_1d(np.abs(hp) < DENOM_TOL)][0])
        raise SingularPointError(f"h' vanishes at z={zb} (critical point)", zb)
    return f.g_prime(z) / hp
