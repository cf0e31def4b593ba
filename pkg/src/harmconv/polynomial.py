"""Complex polynomials and zero location relative to the unit circle.

Three independent routes are provided for deciding where the zeros of a
polynomial lie with respect to ``|z| = 1``:

* the Schur-Cohn determinants ``M_1 .. M_d`` (all positive iff every zero
  is strictly inside; in general the number of sign changes in
  ``1, M_1, .., M_d`` equals the number of zeros outside),
* Cohn's degree-reducing rule, iterated into a chain,
* an Aberth-Ehrlich simultaneous root finder used as an oracle.

Coefficients are always stored in ascending order ``a_0, a_1, .., a_d``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    CohnPreconditionError,
    InconclusiveZeroTest,
    NumericalIntegrityError,
    RootFindingError,
)

TRIM_TOL = 1e-14
ON_CIRCLE_TOL = 1e-8
COHN_MARGIN = 1e-12
# absolute floor when comparing determinants that should vanish
INCONCLUSIVE_TOL = 1e-12
# reciprocal condition number below which a determinant's sign is not trusted
RCOND_TOL = 1e-11
IMAG_TOL = 1e-9
MAX_SWEEPS = 1000
# fixed rotation of the root-finder start points (irrational multiple of 2*pi)
_START_ANGLE = 0.4 * (math.sqrt(5.0) - 1.0)

METHODS = ("schur_cohn", "cohn_chain", "root_oracle")
VERDICTS = ("all_inside", "boundary_cases", "has_outside")


class ComplexPolynomial:
    """Immutable polynomial with complex coefficients in ascending order.

    Trailing coefficients of magnitude below ``1e-14`` are trimmed so that
    the leading coefficient is non-zero unless the polynomial is identically
    zero (stored as the single coefficient ``0``).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel().copy()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.nonzero(np.abs(c) >= TRIM_TOL)[0]
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0):
        c = np.array([leading], dtype=complex)
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @classmethod
    def parse(cls, text: str) -> "ComplexPolynomial":
        """Parse ``"a0,a1,...,ad"``; entries may be complex such as ``1-2.5i``."""
        items = [s.strip() for s in text.split(",")]
        if not items or any(not s for s in items):
            raise ValueError(f"malformed polynomial literal: {text!r}")
        return cls([parse_complex(s) for s in items])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    @property
    def leading(self) -> complex:
        return complex(self._c[-1])

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self._c)))

    def __len__(self):
        return self._c.size

    def __getitem__(self, j):
        return self._c[j]

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        other = _as_poly(other)
        m = max(len(self), len(other))
        return ComplexPolynomial(_pad(self._c, m) + _pad(other._c, m))

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial(-self._c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            return ComplexPolynomial(np.convolve(self._c, other._c))
        return ComplexPolynomial(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ComplexPolynomial(self._c / complex(scalar))

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def allclose(self, other, tol: float = 1e-12) -> bool:
        other = _as_poly(other)
        m = max(len(self), len(other))
        return bool(np.max(np.abs(_pad(self._c, m) - _pad(other._c, m))) <= tol)

    def monic(self) -> "ComplexPolynomial":
        return ComplexPolynomial(self._c / self._c[-1])

    def derivative(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial([0])
        return ComplexPolynomial(self._c[1:] * np.arange(1, self._c.size))

    def to_text(self) -> str:
        return ",".join(format_complex(c) for c in self._c)

    def __repr__(self):
        return f"ComplexPolynomial([{', '.join(format_complex(c) for c in self._c)}])"


def _as_poly(p) -> ComplexPolynomial:
    return p if isinstance(p, ComplexPolynomial) else ComplexPolynomial([p])


def _pad(c, m):
    return np.concatenate([c, np.zeros(m - c.size, dtype=complex)])


_COMPLEX_RE = re.compile(r"\s+")


def parse_complex(text: str) -> complex:
    s = _COMPLEX_RE.sub("", text).replace("I", "j").replace("i", "j")
    if s.endswith("j") and (s in ("j", "+j", "-j") or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"malformed complex literal: {text!r}") from None


def format_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    return f"{c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i"


def evaluate(p: ComplexPolynomial, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    return complex(acc) if acc.ndim == 0 else acc


def conjugate_reciprocal(p: ComplexPolynomial, n_ref: int | None = None) -> ComplexPolynomial:
    """Return ``z**n_ref * conj(p(1/conj(z)))``: coefficients reversed and conjugated."""
    n = p.degree if n_ref is None else int(n_ref)
    if n < p.degree:
        raise ValueError(f"reference degree {n} is below the degree {p.degree}")
    c = _pad(p.coeffs, n + 1)
    return ComplexPolynomial(np.conj(c[::-1]))


# ---------------------------------------------------------------------------
# Cohn's rule


def cohn_reduce(t: ComplexPolynomial) -> ComplexPolynomial:
    """One step of Cohn's rule, ``(conj(a_n) t - a_0 t*) / z``.

    The result has degree ``n - 1`` and exactly one zero fewer inside the
    unit circle (the same number on it).
    """
    n = t.degree
    if n < 1:
        raise CohnPreconditionError("Cohn reduction needs degree >= 1")
    a0, an = t.coeffs[0], t.coeffs[-1]
    if not abs(an) - abs(a0) > COHN_MARGIN * max(1.0, abs(an)):
        raise CohnPreconditionError(
            f"|a_0| = {abs(a0):.6g} is not strictly below |a_n| = {abs(an):.6g}")
    s = np.conj(an) * t.coeffs - a0 * _pad(conjugate_reciprocal(t).coeffs, n + 1)
    if abs(s[0]) > 1e-12 * max(1.0, float(np.max(np.abs(s)))):
        raise NumericalIntegrityError("constant term of the Cohn combination did not vanish")
    return ComplexPolynomial(s[1:])


@dataclass(frozen=True)
class ZeroLocationReport:
    """Counts of zeros inside, on and outside the unit circle."""

    degree: int
    inside: int
    on_circle: int
    outside: int
    determinants: tuple = ()
    method: str = "root_oracle"
    verdict: str = field(init=False)

    def __post_init__(self):
        if self.inside + self.on_circle + self.outside != self.degree:
            raise NumericalIntegrityError("zero counts do not add up to the degree")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.inside == self.degree:
            verdict = "all_inside"
        elif self.outside > 0:
            verdict = "has_outside"
        else:
            verdict = "boundary_cases"
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "determinants", tuple(float(m) for m in self.determinants))

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "inside": self.inside,
            "on": self.on_circle,
            "outside": self.outside,
            "determinants": list(self.determinants),
            "method": self.method,
            "verdict": self.verdict,
        }


def _classify(roots) -> tuple[int, int, int]:
    mod = np.abs(np.asarray(roots))
    on = np.abs(mod - 1.0) <= ON_CIRCLE_TOL
    inside = int(np.sum((mod < 1.0) & ~on))
    n_on = int(np.sum(on))
    return inside, n_on, len(mod) - inside - n_on


def cohn_chain(t: ComplexPolynomial) -> tuple[list[ComplexPolynomial], ZeroLocationReport]:
    """Iterate Cohn's rule while ``|a_0| < |a_n|``.

    Each reduction accounts for one zero inside the circle.  Whatever is
    left when the precondition fails is resolved with :func:`find_roots`.
    Reductions are rescaled to be monic, which does not move any zero.
    """
    chain = [t]
    cur = t
    inside = 0
    while cur.degree > 0:
        try:
            cur = cohn_reduce(cur).monic()
        except CohnPreconditionError:
            break
        chain.append(cur)
        inside += 1
    on = out = 0
    if cur.degree > 0:
        r_in, on, out = _classify(find_roots(cur))
        inside += r_in
    report = ZeroLocationReport(t.degree, inside, on, out, method="cohn_chain")
    return chain, report


def terminal_zero(chain: Sequence[ComplexPolynomial]) -> complex:
    """Zero of the last linear polynomial of a Cohn chain."""
    for q in reversed(chain):
        if q.degree == 1:
            return complex(-q.coeffs[0] / q.coeffs[1])
    raise ValueError("chain contains no linear polynomial")


# ---------------------------------------------------------------------------
# Schur-Cohn


@dataclass(frozen=True)
class SchurCohnMatrices:
    k: int
    A: np.ndarray
    B: np.ndarray
    matrix: np.ndarray


def schur_cohn_matrix(p: ComplexPolynomial, k: int) -> SchurCohnMatrices:
    """Triangular blocks ``A_k``, ``B_k`` and the ``2k x 2k`` matrix
    ``[[conj(B_k).T, A_k], [conj(A_k).T, B_k]]``."""
    d = p.degree
    if not 1 <= k <= d:
        raise ValueError(f"block size k={k} outside 1..{d}")
    c = p.coeffs
    A = np.zeros((k, k), dtype=complex)
    B = np.zeros((k, k), dtype=complex)
    for s in range(k):
        idx = np.arange(k - s)
        A[idx, idx + s] = c[s]
        B[idx, idx + s] = np.conj(c[d - s])
    M = np.block([[B.conj().T, A], [A.conj().T, B]])
    return SchurCohnMatrices(k, A, B, M)


def determinant(M) -> complex:
    """Determinant by LU factorisation with partial pivoting (LAPACK)."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("determinant needs a square matrix")
    if M.shape[0] == 0:
        return 1.0 + 0j
    # scipy's LU product stays finite on blocks with subnormal pivots,
    # where numpy.linalg.det returns nan
    return complex(scipy.linalg.det(M))


def _real_or_raise(m: complex, k: int, cond: float = 1.0) -> float:
    """Drop the imaginary part of ``M_k`` after checking it is roundoff.

    LU computes the determinant of a nearby matrix, so besides the fixed
    ``1e-9 * (1 + |M_k|)`` allowance an imaginary part of the order of
    ``k * eps * cond * |M_k|`` is accepted for ill-conditioned blocks.
    """
    eps = np.finfo(float).eps
    # past 1/eps the bound is already of the order of the whole matrix
    cond = min(cond, 1.0 / eps)
    tol = IMAG_TOL * (1.0 + abs(m)) + 100.0 * k * eps * cond * abs(m)
    if abs(m.imag) > tol:
        raise NumericalIntegrityError(
            f"Schur-Cohn determinant M_{k} has imaginary part {m.imag:.3g}")
    return m.real


def _det_and_cond(p: ComplexPolynomial, k: int) -> tuple[complex, float]:
    M = schur_cohn_matrix(p, k).matrix
    return determinant(M), float(np.linalg.cond(M))


def schur_cohn_determinants(p: ComplexPolynomial) -> list[float]:
    """``M_1 .. M_d`` computed from the assembled block matrices."""
    if p.degree < 1:
        raise ValueError("Schur-Cohn needs degree >= 1")
    out = []
    for k in range(1, p.degree + 1):
        m, cond = _det_and_cond(p, k)
        out.append(_real_or_raise(m, k, cond))
    return out


def schur_cohn_determinants_block(p: ComplexPolynomial) -> list[float]:
    """Cross-check route through the Schur complement of ``B_k``:
    ``M_k = det(B_k) det(conj(B_k).T - A_k B_k^{-1} conj(A_k).T)``."""
    out = []
    for k in range(1, p.degree + 1):
        sc = schur_cohn_matrix(p, k)
        comp = sc.B.conj().T - sc.A @ np.linalg.solve(sc.B, sc.A.conj().T)
        detB = np.conj(p.leading) ** k
        out.append(_real_or_raise(detB * determinant(comp), k, float(np.linalg.cond(sc.matrix))))
    return out


def schur_cohn_report(p: ComplexPolynomial) -> ZeroLocationReport:
    """Zero counts from the signs of ``M_k``.

    Raises :class:`InconclusiveZeroTest` when some ``M_k`` is numerically
    zero, judged relative to its block matrix: the reciprocal condition
    number is below ``1e-11``.  LU returns the exact determinant of a
    matrix within about ``eps`` of the true one, so above that threshold
    the sign is reliable however small ``|M_k|`` is.  Zeros on the circle
    and pairs ``z, 1/conj(z)`` make the blocks singular.
    """
    dets = []
    for k in range(1, p.degree + 1):
        m, cond = _det_and_cond(p, k)
        if not cond * RCOND_TOL < 1.0:
            raise InconclusiveZeroTest(f"M_{k} is numerically zero (condition number {cond:.3g})")
        dets.append(_real_or_raise(m, k, cond))
    seq = np.sign([1.0, *dets])
    outside = int(np.sum(seq[1:] != seq[:-1]))
    return ZeroLocationReport(p.degree, p.degree - outside, 0, outside,
                              determinants=dets, method="schur_cohn")


# ---------------------------------------------------------------------------
# root oracle


def _horner_with_derivative(c, z):
    p = np.full(z.shape, c[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def find_roots(p: ComplexPolynomial, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Start points sit equally spaced on the circle of radius
    ``1 + max|a_j / a_d|`` rotated by a fixed irrational angle, so the
    result is deterministic.
    """
    d = p.degree
    if d < 1:
        raise ValueError("find_roots needs degree >= 1")
    c = p.coeffs / p.coeffs[-1]
    if d == 1:
        return np.array([-c[0]])
    radius = 1.0 + float(np.max(np.abs(c[:-1])))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + _START_ANGLE))
    eye = np.eye(d, dtype=bool)
    for _ in range(max_sweeps):
        val, der = _horner_with_derivative(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(val == 0, 0, val / der)
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0)
        z = z - corr
        if np.all(np.abs(corr) <= 4 * np.finfo(float).eps * (1.0 + np.abs(z))):
            break
    scale = float(np.max(np.abs(c)))
    resid = np.abs(evaluate(ComplexPolynomial(c), z))
    bound = 1e-10 * scale * np.maximum(1.0, np.abs(z)) ** d
    if not np.all(resid <= bound):
        raise RootFindingError(f"root finder did not converge within {max_sweeps} sweeps")
    return z


def root_oracle_report(p: ComplexPolynomial) -> ZeroLocationReport:
    inside, on, out = _classify(find_roots(p))
    return ZeroLocationReport(p.degree, inside, on, out, method="root_oracle")


def count_zeros_unit_disk(p: ComplexPolynomial, mode: str = "auto") -> ZeroLocationReport:
    """Locate the zeros of ``p`` relative to ``|z| = 1``.

    ``mode`` is one of ``schur_cohn``, ``cohn_chain``, ``root_oracle`` or
    ``auto``.  ``auto`` uses the determinants and falls back to the root
    oracle when one of them is numerically zero.
    """
    if p.degree < 1:
        raise ValueError("zero location needs degree >= 1")
    if mode == "schur_cohn":
        return schur_cohn_report(p)
    if mode == "cohn_chain":
        return cohn_chain(p)[1]
    if mode == "root_oracle":
        return root_oracle_report(p)
    if mode == "auto":
        try:
            return schur_cohn_report(p)
        except InconclusiveZeroTest:
            return root_oracle_report(p)
    raise ValueError(f"unknown mode {mode!r}")


def factor_out_root(p: ComplexPolynomial, z0: complex) -> ComplexPolynomial:
    """Synthetic division by ``(z - z0)``; refuses if ``z0`` is not a root."""
    d = p.degree
    if d < 1:
        raise ValueError("cannot factor a constant")
    scale = p.scale * max(1.0, abs(z0)) ** d
    if abs(evaluate(p, z0)) > 1e-9 * scale:
        raise ValueError(f"{z0} is not a root (|p(z0)| = {abs(evaluate(p, z0)):.3g})")
    c = p.coeffs
    q = np.empty(d, dtype=complex)
    q[-1] = c[-1]
    for j in range(d - 1, 0, -1):
        q[j - 1] = c[j] + z0 * q[j]
    return ComplexPolynomial(q)
