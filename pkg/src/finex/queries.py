"""Exact clustering queries against a built index.

Two query types are supported without recomputing anything from scratch:
a radius query for any threshold at or below the generating radius, and a
density query for any size threshold at or above the generating one. Both
return labelings that are exact in the sense that noise is identified
precisely, core objects are partitioned correctly, and every border object
lands in a cluster that genuinely reaches it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .build import FinexIndex
from .errors import ContractViolation
from .extract import approximate_clusters, query_clustering
from .model import Labeling, NOISE
from .neighbors import DistanceCounter, NeighborProvider
from .ordering import ClusterOrdering, FINEX_FLAVOR


@dataclass
class QueryStats:
    distance_computations: int = 0
    candidates: int = 0
    added: int = 0
    millis: float = 0.0


def enclosing_cluster_map(ordering: ClusterOrdering) -> list[int]:
    """Exact cluster id at the generating radius for each ordering position.

    One scan at the generating radius; noise positions map to NOISE.
    """
    if ordering.flavor != FINEX_FLAVOR:
        raise ValueError("enclosing clusters are defined on the built index ordering")
    labels = query_clustering(ordering, ordering.params.epsilon)
    return [labels.assignment[e.object_id] for e in ordering.entries]


def epsilon_star_query(
    index: FinexIndex, provider: NeighborProvider, epsilon_star: float
) -> tuple[Labeling, QueryStats]:
    """Exact clustering at a radius at or below the generating one.

    The linear scan already labels everything except former cores: objects
    whose core distance sits between the query radius and the build radius
    may be scanned into noise although some cluster reaches them. Each such
    candidate is tested against the scan clusters it could belong to (those
    it precedes in the ordering, within the same build-radius cluster) by
    computing actual distances to their core objects, stopping at the first
    hit.
    """
    t0 = time.perf_counter()
    params = index.params
    eps = params.epsilon
    if not (0 <= epsilon_star <= eps):
        raise ContractViolation(
            f"epsilon_star {epsilon_star} outside [0, {eps}] "
            f"(index built for epsilon={eps}, min_pts={params.min_pts})"
        )
    index.check_dataset(provider.dataset)
    ordering = index.ordering
    counter = DistanceCounter()
    stats = QueryStats()

    clusters, _ = approximate_clusters(ordering, epsilon_star)
    n = len(ordering)
    assignment = [NOISE] * n
    for cid, members in enumerate(clusters):
        for oid in members:
            assignment[oid] = cid
    core_flags = [False] * n
    for e in ordering.entries:
        core_flags[e.object_id] = e.core_distance <= epsilon_star

    sparse_labels = query_clustering(ordering, eps).assignment

    # Per scan cluster: position of its first object, its enclosing cluster
    # at the build radius, and its core members in scan order.
    first_pos = []
    enclosing = []
    cores = []
    for members in clusters:
        first_pos.append(ordering.entry(members[0]).position)
        enclosing.append(sparse_labels[members[0]])
        cores.append([m for m in members if core_flags[m]])

    candidates = [
        e
        for e in ordering.entries
        if assignment[e.object_id] == NOISE and epsilon_star < e.core_distance <= eps
    ]
    stats.candidates = len(candidates)
    for e in candidates:
        o = e.object_id
        o_sparse = sparse_labels[o]
        for cid in range(len(clusters)):
            if first_pos[cid] <= e.position or enclosing[cid] != o_sparse:
                continue
            hit = False
            for c in cores[cid]:
                if provider.distance(o, c, counter) <= epsilon_star:
                    hit = True
                    break
            if hit:
                assignment[o] = cid
                stats.added += 1
                break

    stats.distance_computations = counter.count
    stats.millis = (time.perf_counter() - t0) * 1000.0
    labeling = Labeling(
        assignment=assignment, core_flags=core_flags, num_clusters=len(clusters)
    )
    return labeling, stats


def compute_core_clustering(
    cores,
    provider: NeighborProvider,
    epsilon: float,
    counter: DistanceCounter | None = None,
) -> list[list[int]]:
    """Partition core objects into density-connected components.

    Every member is expected to be core at the effective size threshold.
    Neighborhoods are intersected with the shrinking set of unvisited
    cores, so each core's neighborhood is computed exactly once.
    """
    remaining = set(cores)
    components: list[list[int]] = []
    for start in sorted(cores):
        if start not in remaining:
            continue
        remaining.discard(start)
        component = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            linked = [
                q
                for q, _ in provider.range_query(x, epsilon, counter).entries
                if q in remaining
            ]
            remaining.difference_update(linked)
            component.extend(linked)
            stack.extend(linked)
        components.append(component)
    return components


def minpts_star_query(
    index: FinexIndex, provider: NeighborProvider, min_pts_star: int
) -> tuple[Labeling, QueryStats]:
    """Exact clustering at a size threshold at or above the generating one.

    Step 1 extracts the exact clustering at the generating pair; its noise
    can never rejoin a denser clustering and is discarded. Step 2 finds the
    density-connected core components inside each of those clusters, using
    the stored neighborhood sizes to decide core status without any
    neighborhood computation; the component search itself is skipped for
    clusters in which every old core keeps its core status. Step 3 attaches
    each remaining object to its finder's component when the finder is
    still dense enough, and drops it to noise otherwise.
    """
    t0 = time.perf_counter()
    params = index.params
    if min_pts_star < params.min_pts:
        raise ContractViolation(
            f"min_pts_star {min_pts_star} below {params.min_pts} "
            f"(index built for epsilon={params.epsilon}, min_pts={params.min_pts})"
        )
    index.check_dataset(provider.dataset)
    ordering = index.ordering
    eps = params.epsilon
    min_pts = params.min_pts
    counter = DistanceCounter()
    stats = QueryStats()

    sparse = query_clustering(ordering, eps)
    if min_pts_star == min_pts:
        stats.millis = (time.perf_counter() - t0) * 1000.0
        return sparse, stats

    n = len(ordering)
    nsize = [0] * n
    finder = [0] * n
    for e in ordering.entries:
        nsize[e.object_id] = e.neighborhood_size
        finder[e.object_id] = e.finder

    assignment = [NOISE] * n
    core_flags = [False] * n
    next_cid = 0
    for cid in range(sparse.num_clusters):
        members = sorted(sparse.members(cid))
        dense_cores = [o for o in members if nsize[o] >= min_pts_star]
        if not dense_cores:
            continue
        demoted = any(min_pts <= nsize[o] < min_pts_star for o in members)
        if demoted:
            components = compute_core_clustering(dense_cores, provider, eps, counter)
        else:
            # Every old core kept its core status, so the cluster's single
            # connected core component carries over unchanged.
            components = [dense_cores]
        for component in components:
            for o in component:
                assignment[o] = next_cid
                core_flags[o] = True
            next_cid += 1

    for o in range(n):
        if sparse.assignment[o] == NOISE or nsize[o] >= min_pts_star:
            continue
        f = finder[o]
        if nsize[f] >= min_pts_star:
            assignment[o] = assignment[f]

    stats.distance_computations = counter.count
    stats.millis = (time.perf_counter() - t0) * 1000.0
    labeling = Labeling(
        assignment=assignment, core_flags=core_flags, num_clusters=next_cid
    )
    return labeling, stats


def exact_equivalent(
    result: Labeling,
    oracle: Labeling,
    provider: NeighborProvider,
    radius: float,
) -> bool:
    """Whether two exact clusterings agree up to ambiguous border choice.

    Requires identical noise sets, identical core flags, identical
    partitions when restricted to core objects, and that every border in
    `result` sits in a cluster containing a core within `radius` of it.
    """
    if len(result) != len(oracle):
        raise ValueError("labelings cover different object sets")
    if result.core_flags != oracle.core_flags:
        return False
    if result.noise_ids != oracle.noise_ids:
        return False

    def core_partition(lab: Labeling) -> set[frozenset[int]]:
        groups: dict[int, set[int]] = {}
        for i, c in enumerate(lab.assignment):
            if c != NOISE and lab.core_flags[i]:
                groups.setdefault(c, set()).add(i)
        return {frozenset(g) for g in groups.values()}

    if core_partition(result) != core_partition(oracle):
        return False

    cores_by_cluster: dict[int, list[int]] = {}
    for i, c in enumerate(result.assignment):
        if c != NOISE and result.core_flags[i]:
            cores_by_cluster.setdefault(c, []).append(i)
    for i, c in enumerate(result.assignment):
        if c == NOISE or result.core_flags[i]:
            continue
        if not any(
            provider.distance(i, core) <= radius for core in cores_by_cluster.get(c, ())
        ):
            return False
    return True
