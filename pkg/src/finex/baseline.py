"""Reference algorithms: exact clustering from scratch and the plain
cluster-ordering builder used as an accuracy baseline.

Both use the deterministic seed policy: whenever an arbitrary unprocessed
object may be chosen, the one with the smallest id is taken. A seed order
can be supplied to exercise order-independence properties.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .model import GeneratingParams, Labeling, NOISE
from .neighbors import DistanceCounter, NeighborProvider
from .ordering import (
    ClusterOrdering,
    OPTICS_FLAVOR,
    OrderingDraft,
    neighborhood_source,
    visit,
)
from .pqueue import StablePriorityQueue


def dbscan_exact(
    provider: NeighborProvider,
    epsilon: float,
    min_pts: int,
    seed_order: Sequence[int] | None = None,
    counter: DistanceCounter | None = None,
) -> Labeling:
    """Exact density-based clustering computed from scratch.

    Core objects are grouped by density-connectivity; each border object is
    assigned to the first cluster whose expansion reaches it; everything
    else is noise. Every neighborhood is computed exactly once.
    """
    n = provider.n
    neighborhoods = [provider.range_query(i, epsilon, counter) for i in range(n)]
    core = [nb.size >= min_pts for nb in neighborhoods]
    assignment = [None] * n
    cid = 0
    for seed in seed_order if seed_order is not None else range(n):
        if not core[seed] or assignment[seed] is not None:
            continue
        assignment[seed] = cid
        queue = deque([seed])
        while queue:
            c = queue.popleft()
            for q, _ in neighborhoods[c].entries:
                if assignment[q] is None:
                    assignment[q] = cid
                    if core[q]:
                        queue.append(q)
        cid += 1
    return Labeling(
        assignment=[a if a is not None else NOISE for a in assignment],
        core_flags=core,
        num_clusters=cid,
    )


def optics_build(
    provider: NeighborProvider,
    epsilon: float,
    min_pts: int,
    seed_order: Sequence[int] | None = None,
) -> ClusterOrdering:
    """Build the baseline cluster ordering.

    Each object is processed exactly once: popped objects are appended and
    never reinserted, so the recorded reachability of an object is the
    minimum over the objects appended before it that reach it.
    """
    if epsilon != provider.epsilon:
        raise ValueError("provider was built for a different epsilon")
    params = GeneratingParams(epsilon=epsilon, min_pts=min_pts)
    draft = OrderingDraft(provider.n, params)
    get_nb = neighborhood_source(provider)
    queue = StablePriorityQueue()
    for seed in seed_order if seed_order is not None else range(provider.n):
        if draft.processed[seed]:
            continue
        nb = get_nb(seed)
        visit(draft, provider, seed, nb)
        draft.append(seed)
        if draft.core_dist[seed] <= epsilon:
            _optics_update(draft, queue, seed, nb)
            while queue:
                p = queue.pop()
                nbp = get_nb(p)
                visit(draft, provider, p, nbp)
                draft.append(p)
                if draft.core_dist[p] <= epsilon:
                    _optics_update(draft, queue, p, nbp)
    return draft.finalize(OPTICS_FLAVOR)


def _optics_update(draft: OrderingDraft, queue: StablePriorityQueue, c: int, nb) -> None:
    cd = draft.core_dist[c]
    for q, d in nb.entries:
        if draft.processed[q]:
            continue
        rdist = max(cd, d)
        if q not in queue:
            draft.reach[q] = rdist
            queue.insert(q, rdist)
        elif rdist < draft.reach[q]:
            draft.reach[q] = rdist
            queue.update(q, rdist)
