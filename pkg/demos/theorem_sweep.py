"""Sweep the monomial-kernel criterion over a grid of (n, a, theta).

Above the bound a >= (n-2)/(n+2) every triple should pass; just below it,
at theta = pi, the dilatation scan finds points with |w| > 1.
"""
import numpy as np

from harmconv.analysis import counterexample_scan, lower_bound_a, verify_theorem22

thetas = (0.0, np.pi / 2, np.pi, 2.0)
print(" n   bound    passed  branches")
for n in range(1, 9):
    lb = lower_bound_a(n)
    vs = [verify_theorem22(n, float(a), th, scan=False)
          for a in np.linspace(lb, 0.95, 6) for th in thetas]
    branches = sorted({v.branch for v in vs})
    print(f"{n:2d}  {lb:+.4f}   {sum(v.passed for v in vs):2d}/{len(vs)}  {', '.join(branches)}")

print()
print(" n   a below bound   max |w| on grid")
for n in range(1, 9):
    a = lower_bound_a(n) - 0.05
    if a <= -1:
        continue
    mx, _ = counterexample_scan(a, n, np.pi)
    print(f"{n:2d}  {a:+.4f}          {mx:.4f}")
