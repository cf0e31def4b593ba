"""Three ways to count zeros of a polynomial in the unit disk.

Schur-Cohn determinants, a chain of Cohn reductions, and the Aberth root
oracle are compared on a few polynomials, including one with a zero on the
circle where the determinant test declines to answer.
"""
import numpy as np

from harmconv import ComplexPolynomial, InconclusiveZeroTest
from harmconv.polynomial import count_zeros_unit_disk, schur_cohn_determinants

cases = {
    "z^2 + z/2 + 1/2": ComplexPolynomial([0.5, 0.5, 1]),
    "(z-0.5)(z+2)(z-0.3i)": ComplexPolynomial.from_roots([0.5, -2, 0.3j]),
    "(z-1)(z+1.01)": ComplexPolynomial([-1.01, 0.01, 1]),
}
for name, p in cases.items():
    print(name)
    print("  determinants", np.round(schur_cohn_determinants(p), 6))
    for mode in ("schur_cohn", "cohn_chain", "root_oracle", "auto"):
        try:
            r = count_zeros_unit_disk(p, mode)
            print(f"  {mode:11s} inside={r.inside} on={r.on_circle} outside={r.outside}")
        except InconclusiveZeroTest as e:
            print(f"  {mode:11s} inconclusive: {e}")
