"""Double Schubert and double Grothendieck polynomials, computed three ways."""

from .cotransition import (
    Pivot, cotransition_grothendieck, cotransition_schubert, cover_terms, lub, minimal_pivot,
    valid_pivots,
)
from .errors import (
    CapacityError, ConsistencyError, DomainError, ExpansionError, FormatError, LubViolation,
    NotDivisibleError, PolySyntaxError, SchubcalcError,
)
from .perm import (
    Diagram, PartialPermutation, Permutation, bruhat_leq, covers_above, dominant_part,
    essential_set, extend_partial, length, longest, parse_permutation, permutations,
    rothe_diagram,
)
from .pipedream import (
    PipeDream, enumerate_nonreduced, enumerate_reduced, grothendieck_pipe_polynomial,
    pipe_polynomial, render_pipe_dream, trace,
)
from .poly import (
    COHOMOLOGICAL, K, Polynomial, divided_difference, exact_divide_linear, isobaric_demazure,
    parse_poly, render, restrict, support, swap_x,
)
from .schubert import (
    BasisExpansion, base_grothendieck, base_schubert, expand, grothendieck_demazure,
    monk_product, reduced_word, schubert_dd,
)
from .verify import VerificationReport, check_equality, run_suite

__version__ = "0.1.0"
