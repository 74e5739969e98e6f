"""Toolkit for higher-order dependence in discrete joint distributions."""

from .dist import (
    JointDistribution,
    entropy,
    entropy_table,
    kl_divergence,
    marginalize,
    product_of_marginals,
    subset_entropy,
)
from .cohesion import (
    CohesionProfile,
    check_polymatroid_bounds,
    check_quad_inequalities,
    cohesion_k,
    cohesion_profile,
    constant_bound,
)
from .gf import FieldSpec, make_field, primitive_element
from .codes import (
    LinearCode,
    code_to_distribution,
    enumerate_codewords,
    k_column_independence,
    min_distance,
    rs_generator,
)
from .matroid import (
    MatroidView,
    RankReport,
    entropy_rank_report,
    is_isomorphic_uniform,
    matroid_from_ranks,
    uniform_representable_over,
    vector_matroid,
)
from .maxent import ProjectionResult, check_eq4_bound, maxent_projection
from .explore import ScanConfig, grid_enumerate, local_search_max, random_sample

__version__ = "0.1.0"

__all__ = [
    "JointDistribution",
    "entropy",
    "entropy_table",
    "kl_divergence",
    "marginalize",
    "product_of_marginals",
    "subset_entropy",
    "CohesionProfile",
    "check_polymatroid_bounds",
    "check_quad_inequalities",
    "cohesion_k",
    "cohesion_profile",
    "constant_bound",
    "FieldSpec",
    "make_field",
    "primitive_element",
    "LinearCode",
    "code_to_distribution",
    "enumerate_codewords",
    "k_column_independence",
    "min_distance",
    "rs_generator",
    "MatroidView",
    "RankReport",
    "entropy_rank_report",
    "is_isomorphic_uniform",
    "matroid_from_ranks",
    "uniform_representable_over",
    "vector_matroid",
    "ProjectionResult",
    "check_eq4_bound",
    "maxent_projection",
    "ScanConfig",
    "grid_enumerate",
    "local_search_max",
    "random_sample",
]
