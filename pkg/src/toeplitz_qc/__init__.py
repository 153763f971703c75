"""Numerical toolkit for Toeplitz operators with quasicontinuous symbols.

Fourier analysis on a uniform circle grid, Hilbert transforms and outer
functions, mean oscillation (BMO/VMO) profiles, winding numbers and Fredholm
indices, symbol factorization and path-component classification, and finite
Toeplitz sections.
"""

from .circle import (CircleGrid, FourierSeries, GridFunction, coefficients, evaluate, fejer_mean,
                     grid_for_degree, poisson)
from .errors import (AmbiguousThresholdError, DomainError, IllConditionedError,
                     NumericalContractError, PreconditionError, ResolutionError, ToeplitzQCError,
                     ValidationError)
from .example_h import example_h, sup_at_zero, uniform_convergence_off_zero
from .factorization import classify, classify_ladder, compare, compare_ladder, factorize
from .index import index_additivity_check, operator_index, winding_number
from .oscillation import (Arc, bmo_profile, essential_range, integer_valued_vmo_check,
                          mean_oscillation, vmo_verdict)
from .symbols import parse_spec, realize
from .toeplitz import (CompactPerturbation, finite_section, kernel_count_index_estimate,
                       operator_component_test, section_norm, semicommutator)
from .transforms import conjugation, double_hilbert_check, hilbert, outer_function

__version__ = "0.1.0"

__all__ = [
    "CircleGrid",
    "FourierSeries",
    "GridFunction",
    "coefficients",
    "evaluate",
    "fejer_mean",
    "grid_for_degree",
    "poisson",
    "AmbiguousThresholdError",
    "DomainError",
    "IllConditionedError",
    "NumericalContractError",
    "PreconditionError",
    "ResolutionError",
    "ToeplitzQCError",
    "ValidationError",
    "example_h",
    "sup_at_zero",
    "uniform_convergence_off_zero",
    "classify",
    "classify_ladder",
    "compare",
    "compare_ladder",
    "factorize",
    "index_additivity_check",
    "operator_index",
    "winding_number",
    "Arc",
    "bmo_profile",
    "essential_range",
    "integer_valued_vmo_check",
    "mean_oscillation",
    "vmo_verdict",
    "parse_spec",
    "realize",
    "CompactPerturbation",
    "finite_section",
    "kernel_count_index_estimate",
    "operator_component_test",
    "section_norm",
    "semicommutator",
    "conjugation",
    "double_hilbert_check",
    "hilbert",
    "outer_function",
]
