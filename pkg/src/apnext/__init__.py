"""Quadratic APN functions over F(2^n), their ortho-derivatives and (0,L,a)-extensions."""

from .backend import BACKEND
from .catalog import FunctionSpec, instantiate
from .extend import (
    ExtendSearchResult,
    ExtensionSpec,
    LinearizedPoly,
    build_extension,
    check_prop4,
    is_zero_extendable,
)
from .field import FieldCtx, FieldError, field_new
from .ortho import NotAPNError, NotQuadraticError, OrthoDerivative, ortho_derivative
from .vecfun import SpectrumReport, VectorialFunction, analyze, is_apn, walsh_linearity

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExtendSearchResult",
    "ExtensionSpec",
    "FieldCtx",
    "FieldError",
    "FunctionSpec",
    "LinearizedPoly",
    "NotAPNError",
    "NotQuadraticError",
    "OrthoDerivative",
    "SpectrumReport",
    "VectorialFunction",
    "analyze",
    "build_extension",
    "check_prop4",
    "field_new",
    "instantiate",
    "is_apn",
    "is_zero_extendable",
    "ortho_derivative",
    "walsh_linearity",
]
