"""Linear-time clustering extraction from an ordering, plus the border
recall metric used to compare approximate labelings against exact ones.
"""

from __future__ import annotations

from .errors import ContractViolation
from .model import Labeling, NOISE
from .ordering import ClusterOrdering


def approximate_clusters(
    ordering: ClusterOrdering, epsilon_star: float
) -> tuple[list[list[int]], list[int]]:
    """One left-to-right scan of the ordering at threshold epsilon_star.

    An object whose reachability exceeds the threshold either opens a new
    cluster (when its core distance is within the threshold) or is noise;
    any other object extends the current cluster. No distances are
    computed. Returns the clusters in scan order and the noise ids.
    """
    eps = ordering.params.epsilon
    if not (0 <= epsilon_star <= eps):
        raise ContractViolation(
            f"epsilon_star {epsilon_star} outside [0, {eps}] "
            f"(index built for epsilon={eps})"
        )
    clusters: list[list[int]] = []
    noise: list[int] = []
    current: list[int] = []
    for e in ordering.entries:
        if e.reachability > epsilon_star:
            if e.core_distance <= epsilon_star:
                if current:
                    clusters.append(current)
                current = [e.object_id]
            else:
                noise.append(e.object_id)
        else:
            current.append(e.object_id)
    if current:
        clusters.append(current)
    return clusters, noise


def query_clustering(ordering: ClusterOrdering, epsilon_star: float) -> Labeling:
    """Approximate clustering at epsilon_star as a labeling.

    An object is flagged core exactly when its recorded core distance is
    within epsilon_star.
    """
    clusters, _ = approximate_clusters(ordering, epsilon_star)
    n = len(ordering)
    assignment = [NOISE] * n
    for cid, members in enumerate(clusters):
        for oid in members:
            assignment[oid] = cid
    core_flags = [False] * n
    for e in ordering.entries:
        core_flags[e.object_id] = e.core_distance <= epsilon_star
    return Labeling(assignment=assignment, core_flags=core_flags, num_clusters=len(clusters))


def border_recall(approx: Labeling, exact: Labeling) -> float:
    """Fraction of true border objects the approximate labeling kept out of noise.

    A border is a non-noise, non-core object of the exact labeling; it
    counts as found when the approximate labeling puts it in any cluster.
    Returns 1.0 when the exact labeling has no borders at all.
    """
    if len(approx) != len(exact):
        raise ValueError("labelings cover different object sets")
    borders = [
        i
        for i, c in enumerate(exact.assignment)
        if c != NOISE and not exact.core_flags[i]
    ]
    if not borders:
        return 1.0
    found = sum(1 for i in borders if approx.assignment[i] != NOISE)
    return found / len(borders)
