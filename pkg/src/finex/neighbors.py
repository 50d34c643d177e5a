"""Range-query backends and the density primitives built on them.

A provider is built once for a dataset and a radius `epsilon` and then
answers exact neighborhood queries for that radius or any smaller one.
All backends agree exactly on membership and on duplicate-weighted
neighborhood sizes; they differ only in how candidates are found:

* brute:   scans every object (any metric)
* matrix:  reads a row of the explicit distance matrix
* kdtree:  exact range search in a median-split tree (euclidean)
* invlist: prefix + length filtered inverted token lists (jaccard)

Distance evaluations are observable through an optional counter so query
strategies can be compared without wall-clock benchmarking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .model import (
    Dataset,
    EUCLIDEAN,
    INF,
    JACCARD,
    MATRIX,
    jaccard_distance,
)

BRUTE = "brute"
INVLIST = "invlist"
KDTREE = "kdtree"
MATRIX_BACKEND = "matrix"
AUTO = "auto"

BACKENDS = (BRUTE, INVLIST, KDTREE, MATRIX_BACKEND)

_COMPATIBLE = {
    BRUTE: (JACCARD, EUCLIDEAN, MATRIX),
    INVLIST: (JACCARD,),
    KDTREE: (EUCLIDEAN,),
    MATRIX_BACKEND: (MATRIX,),
}


class DistanceCounter:
    """Mutable tally of exact distance evaluations."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, k: int = 1) -> None:
        self.count += k

    def reset(self) -> None:
        self.count = 0


@dataclass(frozen=True)
class Neighborhood:
    """All objects within a radius of the query object, including itself.

    `size` is duplicate-weighted: it sums the duplicate counts of the member
    sets (plain cardinality when every count is 1).
    """

    entries: tuple[tuple[int, float], ...]  # (object id, distance), id-sorted
    size: int

    @property
    def ids(self) -> list[int]:
        return [i for i, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


class NeighborProvider:
    """Base for all backends; holds the dataset and the build radius."""

    backend = "abstract"

    def __init__(self, dataset: Dataset, epsilon: float):
        if epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        self.dataset = dataset
        self.epsilon = float(epsilon)
        self.n = dataset.n
        self._counts = dataset.counts

    def distance(self, i: int, j: int, counter: DistanceCounter | None = None) -> float:
        if counter is not None:
            counter.add()
        return self.dataset.distance(i, j)

    def range_query(
        self, pid: int, radius: float | None = None, counter: DistanceCounter | None = None
    ) -> Neighborhood:
        if radius is None:
            radius = self.epsilon
        elif radius > self.epsilon:
            raise ContractViolation(
                f"radius {radius} exceeds build epsilon {self.epsilon}"
            )
        entries = self._collect(pid, radius, counter)
        entries.sort()
        size = int(sum(self._counts[i] for i, _ in entries))
        return Neighborhood(entries=tuple(entries), size=size)

    def _collect(self, pid, radius, counter) -> list[tuple[int, float]]:
        raise NotImplementedError


class BruteForceProvider(NeighborProvider):
    backend = BRUTE

    def _collect(self, pid, radius, counter):
        ds = self.dataset
        if counter is not None:
            counter.add(self.n)
        if ds.metric.kind == EUCLIDEAN:
            dists = np.sqrt(((ds.vectors - ds.vectors[pid]) ** 2).sum(axis=1))
            hits = np.flatnonzero(dists <= radius)
            return [(int(i), float(dists[i])) for i in hits]
        if ds.metric.kind == MATRIX:
            row = ds.metric.matrix[pid]
            hits = np.flatnonzero(row <= radius)
            return [(int(i), float(row[i])) for i in hits]
        q = ds.token_sets[pid]
        out = []
        for i, s in enumerate(ds.token_sets):
            d = jaccard_distance(q, s)
            if d <= radius:
                out.append((i, d))
        return out


class ExplicitMatrixProvider(NeighborProvider):
    backend = MATRIX_BACKEND

    def _collect(self, pid, radius, counter):
        row = self.dataset.metric.matrix[pid]
        if counter is not None:
            counter.add(self.n)
        hits = np.flatnonzero(row <= radius)
        return [(int(i), float(row[i])) for i in hits]


class KdTreeProvider(NeighborProvider):
    """Exact euclidean range search; median split on the widest dimension."""

    backend = KDTREE
    LEAF_SIZE = 16

    def __init__(self, dataset: Dataset, epsilon: float):
        super().__init__(dataset, epsilon)
        self._points = np.ascontiguousarray(dataset.vectors, dtype=np.float64)
        self._root = self._build(np.arange(self.n))

    def _build(self, idx: np.ndarray):
        pts = self._points[idx]
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        if len(idx) <= self.LEAF_SIZE:
            return (lo, hi, idx, None)
        dim = int(np.argmax(hi - lo))
        order = np.argsort(pts[:, dim], kind="stable")
        mid = len(idx) // 2
        left = self._build(idx[order[:mid]])
        right = self._build(idx[order[mid:]])
        return (lo, hi, None, (left, right))

    def _collect(self, pid, radius, counter):
        q = self._points[pid]
        out: list[tuple[int, float]] = []
        stack = [self._root]
        while stack:
            lo, hi, leaf_idx, children = stack.pop()
            # Smallest possible distance from q to this node's bounding box.
            gap = np.maximum(np.maximum(lo - q, q - hi), 0.0)
            if math.sqrt(float((gap**2).sum())) > radius:
                continue
            if leaf_idx is not None:
                if counter is not None:
                    counter.add(len(leaf_idx))
                dists = np.sqrt(((self._points[leaf_idx] - q) ** 2).sum(axis=1))
                for i, d in zip(leaf_idx, dists):
                    if d <= radius:
                        out.append((int(i), float(d)))
            else:
                stack.extend(children)
        return out


def _safe_ceil(x: float) -> int:
    # Guard against float fuzz shortening a prefix (more candidates are
    # harmless, fewer would lose neighbors).
    return math.ceil(x - 1e-9)


class SetInvertedListProvider(NeighborProvider):
    """Jaccard range search via prefix and length filtering.

    Tokens are globally reordered by ascending document frequency so that
    prefixes consist of rare tokens. A set of size m gets a prefix of
    length m - ceil(t*m) + 1 for the similarity threshold t = 1 - epsilon;
    inverted lists over index prefixes are probed with query prefixes and
    surviving candidates are verified with the exact distance.
    """

    backend = INVLIST

    def __init__(self, dataset: Dataset, epsilon: float):
        super().__init__(dataset, epsilon)
        self._threshold = 1.0 - epsilon  # similarity threshold t
        freq: dict[int, int] = {}
        for ts in dataset.token_sets:
            for t in ts:
                freq[t] = freq.get(t, 0) + 1
        rank = {
            t: r
            for r, t in enumerate(sorted(freq, key=lambda t: (freq[t], t)))
        }
        self._ranked = [
            np.array(sorted(rank[t] for t in ts), dtype=np.int64)
            for ts in dataset.token_sets
        ]
        self._postings: dict[int, list[int]] = {}
        if self._threshold > 0:
            for oid, arr in enumerate(self._ranked):
                plen = len(arr) - _safe_ceil(self._threshold * len(arr)) + 1
                for tok in arr[:plen]:
                    self._postings.setdefault(int(tok), []).append(oid)

    def _collect(self, pid, radius, counter):
        ds = self.dataset
        q = ds.token_sets[pid]
        out: list[tuple[int, float]] = []
        if self._threshold <= 0:
            # epsilon >= 1 admits every pair; nothing can be filtered.
            if counter is not None:
                counter.add(self.n)
            for i, s in enumerate(ds.token_sets):
                d = jaccard_distance(q, s)
                if d <= radius:
                    out.append((i, d))
            return out
        arr = self._ranked[pid]
        m = len(arr)
        plen = m - _safe_ceil(self._threshold * m) + 1
        seen = set()
        for tok in arr[:plen]:
            seen.update(self._postings.get(int(tok), ()))
        t_query = 1.0 - radius
        lo = t_query * m - 1e-9
        hi = m / t_query + 1e-9 if t_query > 0 else math.inf
        for cand in seen:
            csize = len(self._ranked[cand])
            if csize < lo or csize > hi:
                continue
            if counter is not None:
                counter.add()
            d = jaccard_distance(q, ds.token_sets[cand])
            if d <= radius:
                out.append((cand, d))
        return out


def build_provider(
    dataset: Dataset, epsilon: float, backend: str = AUTO
) -> NeighborProvider:
    """Construct the range-query backend for a dataset and build radius."""
    if backend == AUTO:
        backend = {JACCARD: INVLIST, EUCLIDEAN: KDTREE, MATRIX: MATRIX_BACKEND}[
            dataset.metric.kind
        ]
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if dataset.metric.kind not in _COMPATIBLE[backend]:
        raise ValueError(
            f"backend {backend!r} is incompatible with metric {dataset.metric.kind!r}"
        )
    cls = {
        BRUTE: BruteForceProvider,
        INVLIST: SetInvertedListProvider,
        KDTREE: KdTreeProvider,
        MATRIX_BACKEND: ExplicitMatrixProvider,
    }[backend]
    return cls(dataset, epsilon)


def neighborhood_core_distance(nb: Neighborhood, counts, min_pts: int) -> float:
    """Smallest radius at which the neighborhood reaches min_pts weight.

    Infinity when even the full neighborhood is too small, which makes the
    result usable directly as the core distance for the build radius.
    """
    if nb.size < min_pts:
        return INF
    by_dist = sorted((d, i) for i, d in nb.entries)
    cum = 0
    for d, i in by_dist:
        cum += int(counts[i])
        if cum >= min_pts:
            return d
    return INF


def min_pts_distance(provider: NeighborProvider, pid: int, min_pts: int) -> float:
    """Smallest dataset distance delta with weighted |N_delta(pid)| >= min_pts.

    Only distances up to the provider's build radius are visible; if the
    weighted neighborhood at the build radius is still too small the result
    is infinity.
    """
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    nb = provider.range_query(pid)
    return neighborhood_core_distance(nb, provider.dataset.counts, min_pts)


def core_distance(
    provider: NeighborProvider, pid: int, epsilon: float, min_pts: int
) -> float:
    """Min-pts distance when pid is core at `epsilon`, infinity otherwise."""
    nb = provider.range_query(pid, epsilon)
    return neighborhood_core_distance(nb, provider.dataset.counts, min_pts)


def reachability_distance(
    provider: NeighborProvider,
    qid: int,
    pid: int,
    epsilon: float,
    min_pts: int,
    counter: DistanceCounter | None = None,
) -> float:
    """max(core distance of pid, d(pid, qid)) when pid is core, else infinity."""
    cd = core_distance(provider, pid, epsilon, min_pts)
    if cd == INF:
        return INF
    return max(cd, provider.distance(pid, qid, counter))
