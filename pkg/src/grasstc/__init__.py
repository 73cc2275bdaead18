"""Mod-2 cohomology of real Grassmannians and bounds on their LS category
and topological complexity."""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import BoundsReport, bounds_report, closed_form_zcl, monotonicity_report, predict_products, tc_upper
from .cells import SchubertSymbol, cell_counts, enumerate_symbols
from .errors import GrassTCError, InfeasibleError, UsageError
from .flag import FlagCertificate, flag_nonzero, grassmann_nonzero_via_flag, pi_star
from .gf2poly import Polynomial, VarSpace
from .kernels import BACKEND
from .ring import GrassmannRing, build_ring, dual_class
from .tensor import TensorPolynomial, ZclResult, z, z_monomial_is_nonzero, zcl_basic, zcl_exact

__all__ = [
    "BACKEND", "BoundsReport", "FlagCertificate", "GrassTCError", "GrassmannRing", "InfeasibleError",
    "Polynomial", "SchubertSymbol", "TensorPolynomial", "UsageError", "VarSpace", "ZclResult",
    "bounds_report", "build_ring", "cell_counts", "closed_form_zcl", "dual_class", "enumerate_symbols",
    "flag_nonzero", "grassmann_nonzero_via_flag", "monotonicity_report", "pi_star", "predict_products",
    "tc_upper", "z", "z_monomial_is_nonzero", "zcl_basic", "zcl_exact",
]
