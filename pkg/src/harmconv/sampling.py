"""Sampling specifications: polar grids in the disk and curve families."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

R_MAX = 0.999


@dataclass(frozen=True)
class PolarGrid:
    """``radii`` equally spaced radii in ``(0, r_max]`` times ``angles``
    equally spaced angles starting at 0."""

    radii: int = 64
    angles: int = 256
    r_max: float = R_MAX
    r_min: float | None = None

    def __post_init__(self):
        if self.radii < 1 or self.angles < 1:
            raise ValueError("grid needs at least one radius and one angle")
        if not 0 < self.r_max <= R_MAX:
            raise ValueError(f"grid radius must lie in (0, {R_MAX}]")

    def radius_values(self) -> np.ndarray:
        lo = self.r_max / self.radii if self.r_min is None else self.r_min
        return np.linspace(lo, self.r_max, self.radii)

    def angle_values(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angles) / self.angles

    def points(self) -> np.ndarray:
        """Array of shape ``(radii, angles)``."""
        return self.radius_values()[:, None] * np.exp(1j * self.angle_values())[None, :]


@dataclass(frozen=True)
class Circle:
    r: float


@dataclass(frozen=True)
class Ray:
    angle: float
    r_max: float = R_MAX


_FAMILY_RE = re.compile(r"^\s*(circles|rays)\s*:\s*(\d+)\s*@\s*(\d+)\s*$")


def parse_family(text: str) -> tuple[str, int, int]:
    """``"circles:10@512"`` -> ``("circles", 10, 512)``."""
    m = _FAMILY_RE.match(text)
    if not m:
        raise ValueError(f"malformed curve family {text!r}")
    return m.group(1), int(m.group(2)), int(m.group(3))


def circle_family(count: int, r_max: float = R_MAX) -> list[Circle]:
    """``count`` concentric circles, outermost at ``r_max``."""
    return [Circle(r) for r in np.linspace(r_max / count, r_max, count)]


def ray_family(count: int, r_max: float = R_MAX) -> list[Ray]:
    return [Ray(2 * np.pi * j / count, r_max) for j in range(count)]
