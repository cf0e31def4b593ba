"""Harmonic right-half-plane mappings: shearing, Hadamard convolution,
dilatations and zero location relative to the unit circle."""

from .errors import (CohnPreconditionError, HarmconvError, InconclusiveZeroTest,
                     NumericalIntegrityError, RootFindingError, SingularPointError)
from .polynomial import (ComplexPolynomial, ZeroLocationReport, cohn_chain, cohn_reduce,
                         conjugate_reciprocal, count_zeros_unit_disk, find_roots,
                         schur_cohn_determinants, schur_cohn_matrix)
from .series import PowerSeries, order_for_radius
from .harmonic import (DilatationRational, HarmonicMap, KernelSpec, convolve,
                       convolve_half_plane_pair, dilatation_general, dilatation_rational,
                       f_a_closed_form, shear_half_plane)
from .sampling import Circle, PolarGrid, Ray
from .geometry import (Polyline, chd_check, jacobian_sign_scan, polyline_intersections,
                       render_svg, sample_image)
from .analysis import (TheoremVerdict, corollary25_check, example23_check,
                       remark22_check, verdict_schema, verify_theorem22,
                       verify_theorem24)

__version__ = "0.1.0"
