"""Cluster orderings: the permutation-with-attributes both builders produce.

Each processed object carries five attributes: its 1-based position P, its
core distance C, the reachability distance R at which it settled, its
duplicate-weighted neighborhood size N, and a finder reference F pointing
at its densest core neighbor (itself when no core reaches it).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import GeneratingParams, INF, JACCARD
from .neighbors import NeighborProvider, Neighborhood, neighborhood_core_distance

OPTICS_FLAVOR = "optics"
FINEX_FLAVOR = "finex"


@dataclass(frozen=True)
class IndexEntry:
    object_id: int
    position: int
    core_distance: float
    reachability: float
    neighborhood_size: int
    finder: int


class ClusterOrdering:
    """A permutation of the dataset with per-object ordering attributes."""

    def __init__(self, entries: list[IndexEntry], params: GeneratingParams, flavor: str):
        ids = [e.object_id for e in entries]
        if sorted(ids) != list(range(len(ids))):
            raise ValueError("ordering must be a permutation of the object ids")
        if [e.position for e in entries] != list(range(1, len(ids) + 1)):
            raise ValueError("positions must be 1..n in sequence order")
        self.entries = entries
        self.params = params
        self.flavor = flavor
        self._by_id = {e.object_id: e for e in entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def entry(self, oid: int) -> IndexEntry:
        return self._by_id[oid]

    def sequence(self) -> list[int]:
        return [e.object_id for e in self.entries]


class OrderingDraft:
    """Mutable build state shared by the two ordering construction loops.

    The sequence is kept as a slot list with tombstones so that removing an
    already-appended object (for requeueing) is O(1); final positions are
    assigned from the compacted sequence when the build finishes.
    """

    def __init__(self, n: int, params: GeneratingParams):
        self.n = n
        self.params = params
        self.core_dist = [INF] * n
        self.reach = [INF] * n
        self.nsize = [0] * n
        self.finder = list(range(n))
        self.processed = [False] * n
        self.visited = [False] * n
        self.removals = [0] * n
        self._slots: list[int | None] = []
        self._slot_of: dict[int, int] = {}

    def append(self, oid: int) -> None:
        self.processed[oid] = True
        self.visited[oid] = True
        self._slot_of[oid] = len(self._slots)
        self._slots.append(oid)

    def remove(self, oid: int) -> None:
        self.processed[oid] = False
        self._slots[self._slot_of.pop(oid)] = None
        self.removals[oid] += 1

    def appended_count(self) -> int:
        return len(self._slot_of)

    def finalize(self, flavor: str) -> ClusterOrdering:
        entries = []
        pos = 0
        for oid in self._slots:
            if oid is None:
                continue
            pos += 1
            entries.append(
                IndexEntry(
                    object_id=oid,
                    position=pos,
                    core_distance=self.core_dist[oid],
                    reachability=self.reach[oid],
                    neighborhood_size=self.nsize[oid],
                    finder=self.finder[oid],
                )
            )
        return ClusterOrdering(entries, self.params, flavor)


def neighborhood_source(provider: NeighborProvider):
    """Accessor for build-radius neighborhoods.

    Set data materializes every neighborhood up front; other data is queried
    on demand and nothing is retained.
    """
    if provider.dataset.metric.kind == JACCARD:
        all_nbs = [provider.range_query(i) for i in range(provider.n)]
        return all_nbs.__getitem__
    return lambda i: provider.range_query(i)


def visit(draft: OrderingDraft, provider: NeighborProvider, oid: int, nb: Neighborhood) -> None:
    """Record core distance and weighted neighborhood size for a first visit."""
    draft.core_dist[oid] = neighborhood_core_distance(
        nb, provider.dataset.counts, draft.params.min_pts
    )
    draft.nsize[oid] = nb.size
