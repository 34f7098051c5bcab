"""Exact computation, certification and constructive realisation of the
non-isotropic (1 + sqrt eps)^2 bound for sums of independent rank-one matrices."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    ComplexRational,
    HermitianMatrix,
    VectorC,
    is_psd,
    loewner_leq,
    operator_norm,
    outer_product,
    trace_product_bound_holds,
)
from .barrier import (  # noqa: E402
    BarrierCertificate,
    EvaluationPoint,
    barrier_value,
    certify_theorem2,
    check_barrier_shift,
    is_above_roots_det,
)
from .errors import (  # noqa: E402
    GuardExceeded,
    HypothesisViolated,
    InterlacingViolation,
    InvariantBreach,
    MixedCharNotRealRooted,
    NotAboveRoots,
    ParseError,
    PreconditionFail,
)
from .expectation import (  # noqa: E402
    Instance,
    InstanceStats,
    RandomVectorSpec,
    SupportPoint,
    expected_char_poly_enumeration,
    instance_stats,
    verify_determinant_identity,
)
from .multilinear import (  # noqa: E402
    MixedCharResult,
    MultilinearDetElement,
    apply_one_minus_partials,
    mixed_char_injection_oracle,
    mixed_char_poly,
    truncated_determinant,
)
from .poly import (  # noqa: E402
    RootBracket,
    UniPoly,
    char_poly,
    check_common_interlacing_consequence,
    is_above_roots_1d,
    is_real_rooted,
    largest_root,
)
from .quadratic import QuadraticFieldElement  # noqa: E402
from .search import (  # noqa: E402
    Assignment,
    LiftedSystem,
    Partition,
    brute_force_best_assignment,
    brute_force_partition_oracle,
    greedy_interlacing_assignment,
    lift_for_partition,
    partition_vectors,
)
