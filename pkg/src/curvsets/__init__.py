"""Curvature sets of the circle, exactly.

Finite point configurations on the unit circle, their geodesic distance
matrices over exact rational angles, the cluster structures that organise
them into a simplicial complex, and independently verified homology of that
complex.  A floating-point side module certifies the cosine images of
distance matrices as low-rank correlation matrices.

The arithmetic core (angles, distances, barycentric coordinates) is exact
``fractions.Fraction``; homology ranks run over multiple prime fields with
cross-checks, and small cases additionally through fraction-free elimination
and integer Smith normal forms.
"""

from .circle import (
    CirclePoint,
    Configuration,
    DistanceMatrix,
    Isometry,
    apply_isometry,
    chirality,
    distance_matrix,
    fold,
    format_configuration,
    format_distance_matrix,
    geodesic_distance,
    normalize,
    parse_configuration,
    parse_distance_matrix,
    realize_matrix,
    recover_isometry,
)
from .cluster import (
    BarycentricPoint,
    ClusterStructure,
    convex_decomposition,
    induced_cluster,
    phi,
    predicted_distance,
    prefix_sum,
    restrict,
    reverse_barycentric,
    transpose,
    vertex,
    vertex_set,
)
from .elliptope import (
    CorrelationMatrix,
    MembershipReport,
    chordal_to_geodesic,
    cosine_transform,
    elliptope_membership,
    geodesic_to_chordal,
    gram_rank,
    is_psd,
)
from .errors import (
    CurvsetsError,
    DimensionMismatch,
    EmptyIndexSet,
    IndexOutOfRange,
    InvalidClusterStructure,
    InvalidRange,
    MatricesDiffer,
    NotNormalized,
    NotPSD,
    NotRealizable,
    NotSymmetric,
    RankDisagreement,
    SizeLimitExceeded,
)
from .homology import (
    ChainComplex,
    HomologyGroup,
    HomologyReport,
    betti_over_field,
    boundary_matrices,
    boundary_triples,
    closed_form_all,
    closed_form_homology,
    integer_homology,
    smith_normal_form,
    verify_homology,
)
from .state_complex import (
    MinimalSimplex,
    SignVertex,
    SimplicialComplex,
    build_state_complex,
    enumerate_cluster_structures,
    euler_characteristic_formula,
    f_vector_formula,
    minimal_simplex,
    raw_structure_count,
    simplex_counts,
    stirling2,
    verify_complex,
)
from .verify import (
    run_elliptope_sweep,
    run_identity_suite,
    run_minimality_check,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # circle
    "CirclePoint",
    "Configuration",
    "DistanceMatrix",
    "Isometry",
    "apply_isometry",
    "chirality",
    "distance_matrix",
    "fold",
    "format_configuration",
    "format_distance_matrix",
    "geodesic_distance",
    "normalize",
    "parse_configuration",
    "parse_distance_matrix",
    "realize_matrix",
    "recover_isometry",
    # cluster
    "BarycentricPoint",
    "ClusterStructure",
    "convex_decomposition",
    "induced_cluster",
    "phi",
    "predicted_distance",
    "prefix_sum",
    "restrict",
    "reverse_barycentric",
    "transpose",
    "vertex",
    "vertex_set",
    # state complex
    "MinimalSimplex",
    "SignVertex",
    "SimplicialComplex",
    "build_state_complex",
    "enumerate_cluster_structures",
    "euler_characteristic_formula",
    "f_vector_formula",
    "minimal_simplex",
    "raw_structure_count",
    "simplex_counts",
    "stirling2",
    "verify_complex",
    # homology
    "ChainComplex",
    "HomologyGroup",
    "HomologyReport",
    "betti_over_field",
    "boundary_matrices",
    "boundary_triples",
    "closed_form_all",
    "closed_form_homology",
    "integer_homology",
    "smith_normal_form",
    "verify_homology",
    # elliptope
    "CorrelationMatrix",
    "MembershipReport",
    "chordal_to_geodesic",
    "cosine_transform",
    "elliptope_membership",
    "geodesic_to_chordal",
    "gram_rank",
    "is_psd",
    # verification suites
    "run_elliptope_sweep",
    "run_identity_suite",
    "run_minimality_check",
    # errors
    "CurvsetsError",
    "DimensionMismatch",
    "EmptyIndexSet",
    "IndexOutOfRange",
    "InvalidClusterStructure",
    "InvalidRange",
    "MatricesDiffer",
    "NotNormalized",
    "NotPSD",
    "NotRealizable",
    "NotSymmetric",
    "RankDisagreement",
    "SizeLimitExceeded",
]
