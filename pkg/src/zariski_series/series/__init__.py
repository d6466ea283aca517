"""Rational generating functions of dimension functions."""

from .poly import (
    MultiPoly,
    RationalSeries,
    SeriesError,
    coefficient_list,
    expand,
    parse_series,
    positive_grading,
    serialize,
)
from .quasipoly import NoFitError, QuasiPolynomial, quasi_poly_fit
from .rationalize import (
    H0Oracle,
    RationalizationError,
    TableOracle,
    cone_lattice_series,
    cone_series,
    inclusion_exclusion,
    poincare_series,
    rationalize_orthant,
    rationalize_with_chop,
)
from .reduction import ChamberReduction, chamber_reduced_series, chamber_reduction

__all__ = [
    "MultiPoly",
    "RationalSeries",
    "SeriesError",
    "coefficient_list",
    "expand",
    "parse_series",
    "positive_grading",
    "serialize",
    "NoFitError",
    "QuasiPolynomial",
    "quasi_poly_fit",
    "H0Oracle",
    "RationalizationError",
    "TableOracle",
    "cone_lattice_series",
    "cone_series",
    "inclusion_exclusion",
    "poincare_series",
    "rationalize_orthant",
    "rationalize_with_chop",
    "ChamberReduction",
    "chamber_reduced_series",
    "chamber_reduction",
]
