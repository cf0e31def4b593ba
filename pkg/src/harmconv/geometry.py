"""Images of circles and rays under harmonic maps, sampled convexity in the
horizontal direction, segment intersections and SVG output."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .harmonic import HarmonicMap
from .sampling import R_MAX, Circle, PolarGrid, Ray

DEDUP_TOL = 1e-14
LEVEL_BAND = 1e-9
ORIENT_TOL = 1e-12


@dataclass(frozen=True)
class Polyline:
    """Ordered complex points; a closed polyline has an implicit last edge."""

    points: np.ndarray
    closed: bool = False
    style: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size:
            keep = np.ones(pts.size, dtype=bool)
            keep[1:] = np.abs(np.diff(pts)) >= DEDUP_TOL
            pts = pts[keep]
            if self.closed and pts.size > 1 and abs(pts[-1] - pts[0]) < DEDUP_TOL:
                pts = pts[:-1]
        if self.closed and pts.size < 3:
            raise ValueError("a closed polyline needs at least 3 distinct points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        p = self.points
        if self.closed:
            return p, np.roll(p, -1)
        return p[:-1], p[1:]


def sample_image(f: HarmonicMap, curve, samples: int) -> Polyline:
    """Image of a circle ``|z| = r`` (closed) or of a ray segment (open)."""
    if isinstance(curve, Circle):
        r = curve.r
        _check_r(r)
        _warn_truncation(f, r)
        w = f.h.eval_circle(r, samples) + np.conj(f.g.eval_circle(r, samples))
        return Polyline(w, closed=True)
    if isinstance(curve, Ray):
        _check_r(curve.r_max)
        _warn_truncation(f, curve.r_max)
        z = np.linspace(0.0, curve.r_max, samples) * np.exp(1j * curve.angle)
        return Polyline(f(z), closed=False)
    raise TypeError(f"unsupported curve {curve!r}")


def _check_r(r):
    if not 0 <= r <= R_MAX:
        raise ValueError(f"evaluation radius {r} exceeds {R_MAX}")


def _warn_truncation(f: HarmonicMap, r: float, tol: float = 1e-6):
    if f.h.tail_bound(r) > tol or f.g.tail_bound(r) > tol:
        warnings.warn(f"truncation order {f.order} is too small for radius {r}",
                      RuntimeWarning, stacklevel=3)


class CHDResult(NamedTuple):
    ok: bool
    offending_levels: list


def chd_check(curve: Polyline, levels: int = 200) -> CHDResult:
    """Count crossings of ``levels`` horizontal lines with a closed curve.

    The region bounded by a simple closed curve is convex in the horizontal
    direction when every line meets the boundary 0 or 2 times.  Lines
    passing within ``1e-9`` of a vertex are nudged off it.
    """
    if not curve.closed:
        raise ValueError("chd_check needs a closed curve")
    y = curve.points.imag
    lo, hi = float(y.min()), float(y.max())
    if not hi > lo:
        raise ValueError("degenerate curve: zero vertical extent")
    ys = lo + (np.arange(levels) + 0.5) * (hi - lo) / levels
    for _ in range(16):
        near = np.any(np.abs(y[None, :] - ys[:, None]) < LEVEL_BAND, axis=1)
        if not near.any():
            break
        ys = np.where(near, ys + LEVEL_BAND * 1.5, ys)
    y0 = y[None, :] - ys[:, None]
    y1 = np.roll(y, -1)[None, :] - ys[:, None]
    counts = np.sum(y0 * y1 < 0, axis=1)
    bad = [float(v) for v, c in zip(ys, counts) if c not in (0, 2)]
    return CHDResult(not bad, bad)


def _orient(a, b, c):
    """Sign of ``cross(b - a, c - a)`` with a relative collinearity band."""
    u, v = b - a, c - a
    cr = u.real * v.imag - u.imag * v.real
    band = ORIENT_TOL * np.abs(u) * np.abs(v)
    return np.where(cr > band, 1, np.where(cr < -band, -1, 0))


def _on_segment(a, b, c):
    """For collinear ``c``: does it lie in the bounding box of ``ab``?"""
    eps = ORIENT_TOL * (np.abs(a) + np.abs(b) + 1.0)
    return ((np.minimum(a.real, b.real) - eps <= c.real) & (c.real <= np.maximum(a.real, b.real) + eps)
            & (np.minimum(a.imag, b.imag) - eps <= c.imag) & (c.imag <= np.maximum(a.imag, b.imag) + eps))


def polyline_intersections(c1: Polyline, c2: Polyline | None = None,
                           chunk: int = 512) -> list[complex]:
    """Witness points of all segment-segment intersections.

    With ``c2`` omitted (or equal to ``c1``) self-intersections are found,
    skipping pairs of adjacent segments.
    """
    self_mode = c2 is None or c2 is c1
    p1, q1 = c1.segments()
    p2, q2 = (p1, q1) if self_mode else c2.segments()
    n1, n2 = p1.size, p2.size
    out: list[complex] = []
    for start in range(0, n1, chunk):
        i = np.arange(start, min(start + chunk, n1))[:, None]
        j = np.arange(n2)[None, :]
        a, b = p1[i], q1[i]
        c, d = p2[j], q2[j]
        o1, o2 = _orient(a, b, c), _orient(a, b, d)
        o3, o4 = _orient(c, d, a), _orient(c, d, b)
        hit = (o1 != o2) & (o3 != o4)
        hit |= (o1 == 0) & _on_segment(a, b, c)
        hit |= (o2 == 0) & _on_segment(a, b, d)
        hit |= (o3 == 0) & _on_segment(c, d, a)
        hit |= (o4 == 0) & _on_segment(c, d, b)
        if self_mode:
            mask = j > i + 1
            if c1.closed:
                mask &= ~((i == 0) & (j == n1 - 1))
            hit &= mask
        ii, jj = np.nonzero(hit)
        for u, v in zip(ii, jj):
            out.append(_witness(a[u, 0], b[u, 0], c[0, v], d[0, v]))
    return out


def _witness(a, b, c, d) -> complex:
    r, s = b - a, d - c
    den = r.real * s.imag - r.imag * s.real
    if abs(den) > ORIENT_TOL * abs(r) * abs(s):
        w = c - a
        t = (w.real * s.imag - w.imag * s.real) / den
        return complex(a + t * r)
    for cand in (c, d, a, b):
        if _on_segment(a, b, cand) and _on_segment(c, d, cand):
            return complex(cand)
    return complex(c)


class JacobianScan(NamedTuple):
    min_value: float
    location: complex


def jacobian_sign_scan(f: HarmonicMap, grid: PolarGrid | None = None) -> JacobianScan:
    """Minimum of ``|h'|**2 - |g'|**2`` over a polar grid."""
    grid = grid or PolarGrid()
    hp, gp = f.h.derivative(), f.g.derivative()
    best, where = np.inf, 0j
    angles = grid.angle_values()
    for r in grid.radius_values():
        _warn_truncation(f, r)
        J = np.abs(hp.eval_circle(r, grid.angles)) ** 2 - np.abs(gp.eval_circle(r, grid.angles)) ** 2
        k = int(np.argmin(J))
        if J[k] < best:
            best, where = float(J[k]), complex(r * np.exp(1j * angles[k]))
    return JacobianScan(best, where)


def robust_window(curves: Sequence, quantile: float = 0.05, grow: float = 0.5):
    """Window covering the central part of the sampled points.

    Images of circles close to ``|z| = 1`` run off to very large values near
    ``z = 1``; fitting every point would squash the rest of the picture.
    """
    pts = np.concatenate([(c[0] if isinstance(c, tuple) else c).points for c in curves])
    x0, x1 = np.quantile(pts.real, [quantile, 1 - quantile])
    y0, y1 = np.quantile(pts.imag, [quantile, 1 - quantile])
    dx, dy = grow * (x1 - x0), grow * (y1 - y0)
    return (float(x0 - dx), float(y0 - dy), float(x1 + dx), float(y1 + dy))


_DEFAULT_STYLE = {"stroke": "#1f3a93", "stroke-width": "1", "fill": "none"}


def render_svg(curves: Sequence, width: int = 800, height: int = 800,
               window: tuple[float, float, float, float] | None = None) -> str:
    """SVG 1.1 document with one ``path`` per polyline.

    ``curves`` holds :class:`Polyline` objects or ``(Polyline, style)``
    pairs.  The viewBox is fitted to the data with a 5% margin unless
    ``window = (xmin, ymin, xmax, ymax)`` is given.  The y axis points up.
    """
    items = []
    for c in curves:
        poly, style = (c if isinstance(c, tuple) else (c, c.style))
        items.append((poly, {**_DEFAULT_STYLE, **(style or {})}))
    if not items:
        raise ValueError("nothing to render")
    if window is None:
        allp = np.concatenate([p.points for p, _ in items])
        xmin, xmax = float(allp.real.min()), float(allp.real.max())
        ymin, ymax = float(allp.imag.min()), float(allp.imag.max())
    else:
        xmin, ymin, xmax, ymax = map(float, window)
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = 0.025 * span
    vb = (xmin - pad, -(ymax + pad), xmax - xmin + 2 * pad, ymax - ymin + 2 * pad)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="{" ".join(_num(v) for v in vb)}">',
    ]
    for poly, style in items:
        pts = poly.points
        d = "M " + " L ".join(f"{_num(p.real)},{_num(-p.imag)}" for p in pts)
        if poly.closed:
            d += " Z"
        attrs = " ".join(f'{k}="{v}"' for k, v in style.items())
        lines.append(f'<path d="{d}" {attrs} vector-effect="non-scaling-stroke"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _num(v: float) -> str:
    return f"{v:.7g}"
