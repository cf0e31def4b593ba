"""Truncated complex power series about the origin."""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

_FFT_CUTOFF = 512


def _mul_trunc(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` coefficients of the product (no wrap-around)."""
    a, b = a[:n], b[:n]
    if min(a.size, b.size) < _FFT_CUTOFF:
        out = np.convolve(a, b)
    else:
        out = fftconvolve(a, b)
    res = np.zeros(n, dtype=complex)
    m = min(n, out.size)
    res[:m] = out[:m]
    return res


class PowerSeries:
    """Taylor coefficients ``c_0 .. c_N`` of an analytic function at 0.

    ``N`` is the truncation order.  Binary operations work at the smaller
    of the two orders; products are truncated, never wrapped.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel().copy()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def zeros(cls, order: int):
        return cls(np.zeros(order + 1))

    @classmethod
    def monomial(cls, power: int, order: int, coeff: complex = 1.0):
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = coeff
        return cls(c)

    @classmethod
    def geometric(cls, order: int, ratio: complex = 1.0):
        """Series of ``1 / (1 - ratio*z)``."""
        return cls(complex(ratio) ** np.arange(order + 1))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return PowerSeries(self._c[: order + 1])

    def _align(self, other):
        if not isinstance(other, PowerSeries):
            c = np.zeros_like(self._c)
            c[0] = complex(other)
            return self._c, c
        n = min(self._c.size, other._c.size)
        return self._c[:n], other._c[:n]

    def __add__(self, other):
        a, b = self._align(other)
        return PowerSeries(a + b)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        a, b = self._align(other)
        return PowerSeries(a - b)

    def __rsub__(self, other):
        a, b = self._align(other)
        return PowerSeries(b - a)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self._c * complex(other))
        a, b = self._align(other)
        return PowerSeries(_mul_trunc(a, b, a.size))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return PowerSeries(self._c / complex(other))

    def hadamard(self, other: "PowerSeries") -> "PowerSeries":
        """Coefficient-wise product."""
        a, b = self._align(other)
        return PowerSeries(a * b)

    def mul_z(self) -> "PowerSeries":
        """Multiply by ``z`` keeping the order."""
        c = np.zeros_like(self._c)
        c[1:] = self._c[:-1]
        return PowerSeries(c)

    def cumulative(self) -> "PowerSeries":
        """Multiply by ``1/(1 - z)`` (running sum of coefficients)."""
        return PowerSeries(np.cumsum(self._c))

    def derivative(self) -> "PowerSeries":
        """Derivative; the order drops by one since ``c_{N+1}`` is unknown."""
        if self.order == 0:
            return PowerSeries([0.0])
        k = np.arange(1, self._c.size)
        return PowerSeries(self._c[1:] * k)

    def integral(self, constant: complex = 0.0) -> "PowerSeries":
        """Antiderivative; the order rises by one."""
        c = np.empty(self._c.size + 1, dtype=complex)
        c[0] = constant
        c[1:] = self._c / np.arange(1, self._c.size + 1)
        return PowerSeries(c)

    def inverse(self) -> "PowerSeries":
        """Reciprocal series by Newton iteration ``g <- g (2 - f g)``."""
        if abs(self._c[0]) < 1e-12:
            raise ZeroDivisionError("series inversion needs |c_0| >= 1e-12")
        n = self._c.size
        g = np.array([1.0 / self._c[0]], dtype=complex)
        m = 1
        while m < n:
            m = min(2 * m, n)
            fg = _mul_trunc(self._c, g, m)
            fg = -fg
            fg[0] += 2.0
            g = _mul_trunc(g, fg, m)
        return PowerSeries(g)

    def __call__(self, z):
        """Horner evaluation of the truncated sum at scalar or array ``z``."""
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self._c[-1], dtype=complex)
        for a in self._c[-2::-1]:
            acc = acc * z + a
        return complex(acc) if acc.ndim == 0 else acc

    def eval_circle(self, r: float, m: int, phase0: float = 0.0) -> np.ndarray:
        """Values at ``r * exp(i*(phase0 + 2*pi*j/m))`` for ``j = 0..m-1``.

        Coefficients are folded modulo ``m`` and summed with one FFT, which is
        exact for the truncated sum and costs ``O(N + m log m)``.
        """
        k = np.arange(self._c.size)
        w = self._c * (r ** k) * np.exp(1j * phase0 * k)
        folded = np.zeros(m, dtype=complex)
        np.add.at(folded, k % m, w)
        return np.fft.ifft(folded) * m

    def tail_bound(self, r: float) -> float:
        """Size of the last retained term at radius ``r``; a cheap indicator
        of the truncation error there for series with slowly varying
        coefficients."""
        start = max(0, self._c.size - 8)
        tail = np.abs(self._c[start:]) * r ** np.arange(start, self._c.size)
        return float(np.max(tail) / max(1e-300, 1.0 - r))

    def allclose(self, other, tol: float = 1e-12) -> bool:
        a, b = self._align(other)
        return bool(np.max(np.abs(a - b)) <= tol)

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self._c[:6])
        return f"PowerSeries(order={self.order}, [{head}{', ...' if self.order > 5 else ''}])"


def order_for_radius(r: float, growth: int = 3, tol: float = 1e-10) -> int:
    """Truncation order ``N`` making ``N**growth * r**N / (1-r)`` below ``tol``.

    ``growth`` is the polynomial growth rate of the coefficients: the
    half-plane shears have ``h_k ~ k`` and their convolutions ``~ k**2``;
    one more power accounts for a derivative.
    """
    if not 0 <= r < 1:
        raise ValueError("radius must lie in [0, 1)")
    n = 16
    while n ** growth * r ** n / (1.0 - r) > tol:
        n *= 2
    lo, hi = n // 2, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** growth * r ** mid / (1.0 - r) > tol:
            lo = mid
        else:
            hi = mid
    return max(hi, 16)
