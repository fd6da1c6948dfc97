"""Exact computational Lie theory for elliptic adjoint orbits.

From a Dynkin type, a rational elliptic element, and an inner
involution, this package computes the eigenvalue grading of the root
spaces, the parabolic and flag-manifold dimensions, the generalized
Bruhat stratification with its cell codimensions, and the
finite-dimensionality criterion for spaces of holomorphic sections,
all in exact rational arithmetic.
"""

from .bruhat import (
    BruhatCell,
    CodimReport,
    CountingReport,
    Stratification,
    closure_codim_consistency,
    counting_identities,
    gamma_set,
    stratify,
)
from .elliptic import (
    EllipticElement,
    GradedDecomposition,
    count_weighted_partitions,
    dominant_form,
    grade,
    positive_level_weights,
    transform_coweight,
)
from .errors import CapExceededError, IdentityCheckError, ValidationError
from .lowrank import (
    MetricSignature,
    SignatureReport,
    Sl2Class,
    sl2_classify,
    sl2_normalizer,
    su21_signature_table,
)
from .realform import (
    EXHAUSTED_SEARCH,
    HERMITIAN_FAST_FAIL,
    CompactRootData,
    CriterionVerdict,
    FundamentalSystem,
    InnerInvolution,
    all_passing_systems,
    check_s1,
    check_s2,
    compact_roots,
    criterion_S,
    enumerate_fundamental_systems,
)
from .realform import WitnessRoot
from .rootsys import (
    CartanMatrix,
    Root,
    RootSystem,
    as_rational,
    build_root_system,
    cartan_from_label,
    format_rational,
)
from .weyl import (
    ParabolicCosets,
    WeylElement,
    WeylGroup,
    coset_sets,
    enumerate_weyl_group,
    factorize,
    is_symmetric_closed,
)

__version__ = "0.1.0"

__all__ = [
    "BruhatCell",
    "CapExceededError",
    "CartanMatrix",
    "CodimReport",
    "CompactRootData",
    "CountingReport",
    "CriterionVerdict",
    "EXHAUSTED_SEARCH",
    "EllipticElement",
    "FundamentalSystem",
    "GradedDecomposition",
    "HERMITIAN_FAST_FAIL",
    "IdentityCheckError",
    "InnerInvolution",
    "MetricSignature",
    "ParabolicCosets",
    "Root",
    "RootSystem",
    "SignatureReport",
    "Sl2Class",
    "Stratification",
    "ValidationError",
    "WeylElement",
    "WeylGroup",
    "WitnessRoot",
    "__version__",
    "all_passing_systems",
    "as_rational",
    "build_root_system",
    "cartan_from_label",
    "check_s1",
    "check_s2",
    "closure_codim_consistency",
    "compact_roots",
    "coset_sets",
    "count_weighted_partitions",
    "counting_identities",
    "criterion_S",
    "dominant_form",
    "enumerate_fundamental_systems",
    "enumerate_weyl_group",
    "factorize",
    "format_rational",
    "gamma_set",
    "grade",
    "is_symmetric_closed",
    "positive_level_weights",
    "sl2_classify",
    "sl2_normalizer",
    "stratify",
    "su21_signature_table",
    "transform_coweight",
]
