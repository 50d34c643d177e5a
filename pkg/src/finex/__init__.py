"""Density-based clustering behind a build-once index.

Build an index for a generating (epsilon, min_pts) pair, then answer exact
clustering queries for any radius at or below epsilon or any size
threshold at or above min_pts without reclustering from scratch.
"""

from .build import FinexIndex, finex_build
from .baseline import dbscan_exact, optics_build
from .errors import ContractViolation, DataFormatError, FingerprintMismatch
from .extract import border_recall, query_clustering
from .model import (
    Dataset,
    GeneratingParams,
    Labeling,
    Metric,
    NOISE,
    TokenSet,
    deduplicate,
    distance,
    standardize,
)
from .neighbors import DistanceCounter, build_provider
from .queries import (
    QueryStats,
    compute_core_clustering,
    enclosing_cluster_map,
    epsilon_star_query,
    exact_equivalent,
    minpts_star_query,
)

__all__ = [
    "ContractViolation",
    "DataFormatError",
    "Dataset",
    "DistanceCounter",
    "FinexIndex",
    "FingerprintMismatch",
    "GeneratingParams",
    "Labeling",
    "Metric",
    "NOISE",
    "QueryStats",
    "TokenSet",
    "border_recall",
    "build_provider",
    "compute_core_clustering",
    "dbscan_exact",
    "deduplicate",
    "distance",
    "enclosing_cluster_map",
    "epsilon_star_query",
    "exact_equivalent",
    "finex_build",
    "minpts_star_query",
    "optics_build",
    "query_clustering",
    "standardize",
]
