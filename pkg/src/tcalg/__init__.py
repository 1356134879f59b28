"""Exact cohomology computations certifying sequential parametrized
topological complexity bounds for the Fadell-Neuwirth bundle."""

from .algebra import (
    BASE,
    Generator,
    Params,
    Polynomial,
    diagonal_restriction,
    expand_modifications,
    make_generator,
    multiply,
    normal_form,
)
from .bounds import (
    BoundsReport,
    Certificate,
    Regime,
    certify_lower_bound,
    fn_tc_bounds,
    fn_upper_bound,
    kernel_certificate_factors,
    oracle_cup_length,
    upper_bound_schwarz,
)
from .expr import evaluate, format_polynomial, parse
from .genfun import (
    RationalFunction,
    TCSequence,
    expand_series,
    genfun_of,
    principal_residues,
    recurrence_check,
)
from .spaces import IntegerPolynomialInT, enumerate_basis, poincare_polynomial

__version__ = "0.1.0"
