"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the package's query paths: distances
come from full matrices, clusters from a plain reachability closure, and
ordering attributes from brute-force recomputation.
"""

from __future__ import annotations

import math
import random

import numpy as np

from finex.model import Dataset, EUCLIDEAN, JACCARD, Labeling, Metric, NOISE, deduplicate

INF = math.inf


def oracle_dbscan(dist: np.ndarray, counts: np.ndarray, eps: float, min_pts: int) -> Labeling:
    """Exact clustering computed straight off a distance matrix.

    Depth-first expansion, so border ties can resolve differently than in
    the package's breadth-first reference; the equivalence relation used in
    the tests absorbs exactly that freedom.
    """
    n = len(counts)
    nb_mask = dist <= eps
    sizes = (nb_mask * counts[None, :]).sum(axis=1)
    core = sizes >= min_pts
    assignment: list[int | None] = [None] * n
    cid = 0
    for seed in range(n):
        if not core[seed] or assignment[seed] is not None:
            continue
        assignment[seed] = cid
        stack = [seed]
        while stack:
            c = stack.pop()
            for q in np.flatnonzero(nb_mask[c]):
                q = int(q)
                if assignment[q] is None:
                    assignment[q] = cid
                    if core[q]:
                        stack.append(q)
        cid += 1
    return Labeling(
        assignment=[a if a is not None else NOISE for a in assignment],
        core_flags=[bool(c) for c in core],
        num_clusters=cid,
    )


def labelings_equivalent(result: Labeling, oracle: Labeling, dist: np.ndarray,
                         radius: float) -> bool:
    """Matrix-backed version of the exact-equivalence relation."""
    if result.core_flags != oracle.core_flags:
        return False
    if result.noise_ids != oracle.noise_ids:
        return False

    def core_partition(lab):
        groups = {}
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
        if not (dist[i, cores_by_cluster[c]] <= radius).any():
            return False
    return True


def write_demo_matrix_csv(path) -> None:
    from finex.demo import demo_matrix

    m = demo_matrix()
    with open(path, "w") as f:
        for row in m:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def random_set_dataset(rng: random.Random, n_clusters=4, members=25, universe=60,
                       set_size=8, noise=8, dup_rate=0.3) -> Dataset:
    raw: list[list[int]] = []
    for _ in range(n_clusters):
        base = rng.sample(range(universe), set_size)
        for _ in range(members):
            s = list(base)
            for _ in range(rng.randint(0, 3)):
                s[rng.randrange(len(s))] = rng.randrange(universe)
            raw.append(s)
            if rng.random() < dup_rate:
                raw.append(list(s))
    for _ in range(noise):
        raw.append(rng.sample(range(universe), rng.randint(3, set_size)))
    sets, mapping = deduplicate(raw)
    return Dataset(metric=Metric(kind=JACCARD), sets=sets, raw_map=mapping)


def random_vector_dataset(rng: random.Random, n=200, dim=2, centers=4,
                          spread=0.12, extent=2.0, noise_frac=0.1) -> Dataset:
    np_rng = np.random.default_rng(rng.getrandbits(32))
    center_pts = np_rng.uniform(-extent, extent, (centers, dim))
    n_noise = int(n * noise_frac)
    n_clustered = n - n_noise
    assignments = np_rng.integers(0, centers, n_clustered)
    rows = center_pts[assignments] + np_rng.normal(0.0, spread, (n_clustered, dim))
    noise_rows = np_rng.uniform(-extent - 0.5, extent + 0.5, (n_noise, dim))
    arr = np.vstack([rows, noise_rows])
    np_rng.shuffle(arr)
    return Dataset(metric=Metric(kind=EUCLIDEAN), vectors=arr)


def full_distance_matrix(dataset: Dataset) -> np.ndarray:
    """Exact all-pairs distances, computed independently of the providers."""
    if dataset.metric.kind == JACCARD:
        universe = sorted({t for s in dataset.sets for t in s.tokens})
        col = {t: j for j, t in enumerate(universe)}
        onehot = np.zeros((dataset.n, len(universe)), dtype=np.int64)
        for i, s in enumerate(dataset.sets):
            for t in s.tokens:
                onehot[i, col[t]] = 1
        inter = onehot @ onehot.T
        sizes = onehot.sum(axis=1)
        union = sizes[:, None] + sizes[None, :] - inter
        return 1.0 - inter / union
    if dataset.metric.kind == EUCLIDEAN:
        v = dataset.vectors
        diff = v[:, None, :] - v[None, :, :]
        return np.sqrt((diff**2).sum(axis=2))
    return dataset.metric.matrix.copy()


def weighted_sizes(dist: np.ndarray, counts: np.ndarray, eps: float) -> np.ndarray:
    return ((dist <= eps) * counts[None, :]).sum(axis=1)


def brute_core_distance(dist: np.ndarray, counts: np.ndarray, eps: float,
                        min_pts: int, i: int) -> float:
    mask = dist[i] <= eps
    if counts[mask].sum() < min_pts:
        return INF
    order = np.argsort(dist[i][mask], kind="stable")
    dists = dist[i][mask][order]
    cum = np.cumsum(counts[mask][order])
    return float(dists[np.argmax(cum >= min_pts)])


def def34_clusters(dist: np.ndarray, counts: np.ndarray, eps: float, min_pts: int):
    """Full density-based clusters with ambiguous borders in every cluster
    they belong to. Returns (core id set, list of cluster sets)."""
    n = len(counts)
    sizes = weighted_sizes(dist, counts, eps)
    cores = {i for i in range(n) if sizes[i] >= min_pts}
    unseen = set(cores)
    components: list[set[int]] = []
    while unseen:
        start = min(unseen)
        unseen.discard(start)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for q in np.flatnonzero(dist[x] <= eps):
                q = int(q)
                if q in unseen:
                    unseen.discard(q)
                    comp.add(q)
                    stack.append(q)
        components.append(comp)
    clusters = []
    for comp in components:
        idx = sorted(comp)
        reach = (dist[:, idx] <= eps).any(axis=1)
        cluster = comp | {int(q) for q in np.flatnonzero(reach)}
        clusters.append(cluster)
    return cores, clusters


def audit_ordering(index, dataset, dist=None, check_reinsertions=True) -> None:
    """Brute-force recomputation of every ordering attribute.

    Core distance and neighborhood size must match exactly; reachability of
    non-cores must be the global minimum over every core that reaches them;
    reachability of cores must be the minimum over the cores preceding them
    in the ordering; the finder must be the earliest-processed densest core
    neighbor (self for noise); removals stay within the structural bound.
    """
    ordering = index.ordering
    eps = ordering.params.epsilon
    min_pts = ordering.params.min_pts
    if dist is None:
        dist = full_distance_matrix(dataset)
    counts = np.asarray(dataset.counts)
    n = len(counts)
    sizes = weighted_sizes(dist, counts, eps)
    exp_core = np.array(
        [brute_core_distance(dist, counts, eps, min_pts, i) for i in range(n)]
    )
    core_mask = exp_core != INF
    pos = np.empty(n, dtype=np.int64)
    for e in ordering.entries:
        pos[e.object_id] = e.position

    for e in ordering.entries:
        i = e.object_id
        assert e.neighborhood_size == sizes[i], f"N mismatch at {i}"
        assert e.core_distance == exp_core[i], f"C mismatch at {i}"
        reachers = core_mask & (dist[i] <= eps)
        if core_mask[i]:
            offers = reachers & (pos < e.position)
        else:
            offers = reachers
        if offers.any():
            expected = float(np.maximum(exp_core[offers], dist[i][offers]).min())
        else:
            expected = INF
        assert e.reachability == expected, f"R mismatch at {i}"
        if not reachers.any():
            assert e.finder == i, f"noise finder must be self at {i}"
        else:
            ids = np.flatnonzero(reachers)
            best = sizes[ids].max()
            ties = ids[sizes[ids] == best]
            expected_f = int(ties[np.argmin(pos[ties])])
            assert e.finder == expected_f, f"F mismatch at {i}"
    if check_reinsertions and index.removals is not None:
        assert all(r <= min_pts - 1 for r in index.removals), "reinsertion bound"
