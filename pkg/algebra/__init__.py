# algebra/__init__.py
from .errors import (
    NcHodgeError, InputError, ResourceBoundError,
    PolynomialSyntaxError, FactorizationError
)
from .exactfield import CycloNumber, to_rational_coords, cyclo_arith
from .polyforms import GradedPolynomial, DiffForm, poly_parse

__all__ = [
    "NcHodgeError", "InputError", "ResourceBoundError",
    "PolynomialSyntaxError", "FactorizationError",
    "CycloNumber", "to_rational_coords", "cyclo_arith",
    "GradedPolynomial", "DiffForm", "poly_parse",
]
