"""Wavelet bases from quadrature mirror filters, built and checked numerically."""

from .cascade import Pyramid, analyze, synthesize
from .circle_space import CircleFunction, apply_S, apply_S_adjoint, basis_ek, cuntz_residuals, inner, norm
from .filters import (
    Filter,
    FilterError,
    FilterParseError,
    builtin_filter,
    conjugate_filter,
    evaluate,
    indicator_filter,
    laurent_filter,
    parse_filter,
    qmf_residual,
    serialize_filter,
)
from .mra import (
    WaveletSystem,
    basis_psi_jk,
    build_system,
    decomposition_residual,
    dilate,
    embed_Rn,
    gram_matrix,
    inverse_transform,
    wavelet_psi,
)
from .scaling import ExtentError, LineFunction, LineGrid, normalization_residual, recursion_residual, scaling_product

__all__ = [
    "Pyramid",
    "analyze",
    "synthesize",
    "CircleFunction",
    "apply_S",
    "apply_S_adjoint",
    "basis_ek",
    "cuntz_residuals",
    "inner",
    "norm",
    "Filter",
    "FilterError",
    "FilterParseError",
    "builtin_filter",
    "conjugate_filter",
    "evaluate",
    "indicator_filter",
    "laurent_filter",
    "parse_filter",
    "qmf_residual",
    "serialize_filter",
    "WaveletSystem",
    "basis_psi_jk",
    "build_system",
    "decomposition_residual",
    "dilate",
    "embed_Rn",
    "gram_matrix",
    "inverse_transform",
    "wavelet_psi",
    "ExtentError",
    "LineFunction",
    "LineGrid",
    "normalization_residual",
    "recursion_residual",
    "scaling_product",
]

__version__ = "0.1.0"
