"""Convolution of two Moebius-kernel shears f_a * f_b.

The dilatation numerator is a quadratic with one zero fixed inside the disk;
the other zero z0 lies in the closed disk exactly when b >= -(1+3a)/(3+a).
The diagonal a = b crosses that curve at a = -3 + 2 sqrt(2).
"""
import numpy as np

from harmconv.analysis import (corollary25_threshold, theorem24_threshold, theorem24_zero,
                               verify_theorem24)

print("   a      threshold b   |z0| at b=t+0.05   |z0| at b=t-0.05")
for a in np.linspace(-0.8, 0.8, 9):
    t = theorem24_threshold(a)
    up = abs(theorem24_zero(a, t + 0.05)) if t + 0.05 < 1 else float("nan")
    dn = abs(theorem24_zero(a, t - 0.05)) if t - 0.05 > -1 else float("nan")
    print(f"{a:+.2f}   {t:+.6f}      {up:.6f}           {dn:.6f}")

v = verify_theorem24(0.5, -0.9)
print(f"\na=0.5, b=-0.9: pass={v.passed}, max|w| on grid {v.max_modulus:.4f}")
c = corollary25_threshold()
print(f"diagonal threshold by bisection {c:.12f}, exact {-3 + 2 * np.sqrt(2):.12f}")
