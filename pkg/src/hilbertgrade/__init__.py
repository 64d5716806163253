"""Exact Hilbert series, quasi-polynomials and grade bounds for invariant rings.

Given a finite matrix group G in GL_d over the rationals or a prime field,
this package computes, in exact arithmetic:

* the Hilbert series of the invariant ring (group averaging in
  characteristic zero, brute-force dimensions plus a certified
  reconstruction over prime fields),
* its quasi-polynomial form with periodic rational coefficients,
* the fixed-space dimension r of the dual representation, and
* the grade of the quasi-polynomial, checked against the bound d - r - 1.
"""

from .checker import (
    AnalysisOptions,
    AnalysisReport,
    TheoremViolationError,
    analyze,
    battery,
    battery_corpus,
    random_signed_permutation_spec,
)
from .errors import InternalConsistencyError, ResourceLimitError
from .fields import GF, QQ, FieldMismatchError, GFElement, PrimeField, RationalField, is_prime
from .groups import (
    ClosureCapError,
    GroupSpec,
    MatrixGroup,
    close,
    dual_rep,
    fixed_subspace_dim,
    is_modular,
    is_p_group,
)
from .matrices import Matrix, ShapeError, SingularMatrixError
from .molien import MolienCharacteristicError, molien_canonical, molien_series
from .oracle import (
    BasisSizeError,
    MonomialBasis,
    ReconstructionError,
    dickson_degrees,
    hilbert_values,
    induced_action,
    invariant_dim,
    monomial_basis,
    reconstruct_modular_series,
)
from .quasipoly import QuasiPolynomial, from_rational, grade, grade_from_poles, minimal_period
from .series import (
    FormCheckError,
    InexactDivisionError,
    RationalSeries,
    UniPoly,
    cyclotomic,
    cyclotomic_multiplicity,
    form_check,
    pole_orders,
    reduce_series,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisOptions",
    "AnalysisReport",
    "BasisSizeError",
    "ClosureCapError",
    "FieldMismatchError",
    "FormCheckError",
    "GF",
    "GFElement",
    "GroupSpec",
    "InexactDivisionError",
    "InternalConsistencyError",
    "Matrix",
    "MatrixGroup",
    "MolienCharacteristicError",
    "MonomialBasis",
    "PrimeField",
    "QQ",
    "QuasiPolynomial",
    "RationalField",
    "RationalSeries",
    "ReconstructionError",
    "ResourceLimitError",
    "ShapeError",
    "SingularMatrixError",
    "TheoremViolationError",
    "UniPoly",
    "analyze",
    "battery",
    "battery_corpus",
    "close",
    "cyclotomic",
    "cyclotomic_multiplicity",
    "dickson_degrees",
    "dual_rep",
    "fixed_subspace_dim",
    "form_check",
    "from_rational",
    "grade",
    "grade_from_poles",
    "hilbert_values",
    "induced_action",
    "invariant_dim",
    "is_modular",
    "is_p_group",
    "is_prime",
    "minimal_period",
    "molien_canonical",
    "molien_series",
    "monomial_basis",
    "pole_orders",
    "random_signed_permutation_spec",
    "reconstruct_modular_series",
    "reduce_series",
]
