"""Rank-metric codes over F_{q^m}: MRD and generalized-Gabidulin criteria,
explicit non-Gabidulin MRD constructions, and exhaustive code search."""

__version__ = "0.1.0"

from .codes import (  # noqa: E402
    MooreSpec,
    RankCode,
    code_from_json,
    code_to_json,
    dual,
    gabidulin,
    min_rank_distance,
    moore_matrix,
    rank_weight_distribution,
    systematic_form,
)
from .constructions import builtin_examples, construct4, construct5, validate_gamma  # noqa: E402
from .criteria import (  # noqa: E402
    check_all,
    detect_gabidulin,
    is_mrd_distance,
    is_mrd_minor,
    is_mrd_subspace,
)
from .errors import RankMetricError  # noqa: E402
from .gf import FieldSpec, FqmElement, default_field, find_primitive_modulus, make_field  # noqa: E402
from .isometry import Isometry, apply, compose, random_isometry  # noqa: E402
from .linalg import Matrix  # noqa: E402
from .search import SearchReport, SearchSpace, classify_candidate, run_search  # noqa: E402

__all__ = [
    "FieldSpec", "FqmElement", "Isometry", "Matrix", "MooreSpec", "RankCode", "RankMetricError",
    "SearchReport", "SearchSpace", "apply", "builtin_examples", "check_all", "classify_candidate",
    "code_from_json", "code_to_json", "compose", "construct4", "construct5", "default_field",
    "detect_gabidulin", "dual", "find_primitive_modulus", "gabidulin", "is_mrd_distance",
    "is_mrd_minor", "is_mrd_subspace", "make_field", "min_rank_distance", "moore_matrix",
    "random_isometry", "rank_weight_distribution", "run_search", "systematic_form", "validate_gamma",
]
