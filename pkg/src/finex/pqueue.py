"""Stable min-priority queue keyed by object id.

Ties in priority pop in insertion order. A priority update re-queues the
entry as if freshly inserted, so it lands behind existing entries of equal
priority. At most one live entry per object id exists at any time;
superseded heap tuples are dropped lazily on pop.
"""

from __future__ import annotations

import heapq
from itertools import count


class StablePriorityQueue:
    __slots__ = ("_heap", "_live", "_seq")

    def __init__(self):
        self._heap: list[tuple[float, int, int]] = []
        self._live: dict[int, tuple[float, int]] = {}
        self._seq = count()

    def __len__(self) -> int:
        return len(self._live)

    def __bool__(self) -> bool:
        return bool(self._live)

    def __contains__(self, oid: int) -> bool:
        return oid in self._live

    def priority(self, oid: int) -> float:
        return self._live[oid][0]

    def insert(self, oid: int, priority: float) -> None:
        if oid in self._live:
            raise ValueError(f"object {oid} already queued")
        self._push(oid, priority)

    def update(self, oid: int, priority: float) -> None:
        if oid not in self._live:
            raise KeyError(oid)
        self._push(oid, priority)

    def _push(self, oid: int, priority: float) -> None:
        seq = next(self._seq)
        self._live[oid] = (priority, seq)
        heapq.heappush(self._heap, (priority, seq, oid))

    def pop(self) -> int:
        while self._heap:
            priority, seq, oid = heapq.heappop(self._heap)
            if self._live.get(oid) == (priority, seq):
                del self._live[oid]
                return oid
        raise IndexError("pop from empty queue")
