"""cdga-lab: exact-arithmetic rational homotopy computations.

CDGA cohomology over Q, Massey products (triple and higher), Sullivan
minimal models with formality certificates, the generalized Kummer
construction on tori, and the intersection ring of the resolved T^7/Gamma
G2-manifold.
"""

__version__ = "0.1.0"

from .cdga import (  # noqa: F401
    CohClass,
    CohomologySpace,
    Element,
    GeneratorSpec,
    GradedAlgebra,
    Presentation,
    cohomology,
    cup,
    is_exact,
)
from .dsl import ParseError, SemanticError, parse_action, parse_cdga, render  # noqa: F401
from .kummer import (  # noqa: F401
    ActionGroup,
    AffineMap,
    BettiVector,
    ResolutionProfile,
    compose,
    fixed_locus,
    generate_group,
    invariant_betti,
    joyce_generators,
    resolved_betti,
    singular_census,
)
from .massey import MasseyCoset, is_trivial, mc_massey, triple_massey  # noqa: F401
from .sullivan import (  # noqa: F401
    FormalityCertificate,
    MinimalModelStage,
    build_minimal_model,
    check_s_formality,
    fm_formality_report,
    minimal_stage_from_presentation,
    split_generators,
)
