"""Exact knot invariants at rational holonomy parameters.

Tristram-Levine signatures, SU(2) character-variety counts for torus knots,
Brieskorn flat-connection counts, Novikov coefficients, S-complexes and the
index bookkeeping for cobordisms.
"""

__version__ = "0.1.0"

from .exact import CyclotomicNumber, root_of_unity, sign_real
from .knots import (
    LaurentPoly,
    SeifertMatrix,
    admissible,
    alexander,
    litherland_t2,
    signature_jumps,
    tl_signature,
    torus_knot_seifert,
)
from .char_variety import count_reps, flip_check, isolate_roots
from .branched import brieskorn_count, verify_p2
from .coeffs import NovikovElement, eta_alpha, invert_unit, to_function_field
from .s_complex import SComplex, euler_char, froyshov, homology_ranks, tensor, validate
from .cobordism import CobordismData, crossing_change_reducible, d_alpha, eta_of, minimal_reducibles

__all__ = [
    "__version__",
    "CyclotomicNumber",
    "root_of_unity",
    "sign_real",
    "LaurentPoly",
    "SeifertMatrix",
    "admissible",
    "alexander",
    "litherland_t2",
    "signature_jumps",
    "tl_signature",
    "torus_knot_seifert",
    "count_reps",
    "flip_check",
    "isolate_roots",
    "brieskorn_count",
    "verify_p2",
    "NovikovElement",
    "eta_alpha",
    "invert_unit",
    "to_function_field",
    "SComplex",
    "euler_char",
    "froyshov",
    "homology_ranks",
    "tensor",
    "validate",
    "CobordismData",
    "crossing_change_reducible",
    "d_alpha",
    "eta_of",
    "minimal_reducibles",
]
