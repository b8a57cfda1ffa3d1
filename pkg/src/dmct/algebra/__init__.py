"""Exact arithmetic: finite fields, polynomials, Laurent series, Q(zeta_p), Smith form."""

from .cyclotomic import CycRat
from .fq import FqConfig, trace_to_prime_field
from .laurent import Laurent, PrecisionError
from .poly import Poly, absolute_norm, divisor_sum, is_prime_poly, monic_polys
from .snf import SmithForm, smith_normal_form

__all__ = [
    "CycRat",
    "FqConfig",
    "Laurent",
    "Poly",
    "PrecisionError",
    "SmithForm",
    "absolute_norm",
    "divisor_sum",
    "is_prime_poly",
    "monic_polys",
    "smith_normal_form",
    "trace_to_prime_field",
]
