"""Image of the unit disk under f_a * f_1 with a = -0.34, theta = pi.

The dilatation exceeds 1 somewhere in the disk, so the map is not locally
univalent there.  Concentric circles and radial rays are written to an SVG,
and the script prints the crossing points of two neighbouring image circles.
"""
import sys

import numpy as np

from harmconv import (Circle, KernelSpec, convolve_half_plane_pair, order_for_radius,
                      polyline_intersections, sample_image, shear_half_plane)
from harmconv.geometry import render_svg, robust_window
from harmconv.sampling import circle_family, ray_family

a, n, theta = -0.34, 1, np.pi
N = order_for_radius(0.99)
f = convolve_half_plane_pair(a, shear_half_plane(KernelSpec.monomial(n, theta), N))

circles = [sample_image(f, c, 512) for c in circle_family(10, 0.99)]
rays = [sample_image(f, r, 256) for r in ray_family(16, 0.99)]
curves = [(c, {"stroke": "#1f3a93"}) for c in circles] + [(r, {"stroke": "#b03a2e"}) for r in rays]

out = sys.argv[1] if len(sys.argv) > 1 else "counterexample.svg"
with open(out, "w") as fh:
    fh.write(render_svg(curves, window=robust_window(curves)))
print(f"wrote {out} ({len(curves)} curves, truncation N={N})")

inner, outer = (sample_image(f, Circle(r), 512) for r in (0.95, 0.975))
hits = polyline_intersections(inner, outer)
print(f"images of |z|=0.95 and |z|=0.975 cross at {len(hits)} point(s):")
for w in hits:
    print(f"  {w.real:+.6f} {w.imag:+.6f}i")
