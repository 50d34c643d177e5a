"""Index construction.

The build follows the baseline ordering loop but treats non-core objects
specially: an already-appended non-core whose reachability can still drop
is pulled back out of the ordering and requeued, so its final reachability
is the global minimum over every object that reaches it. Alongside, every
object tracks its densest core neighbor as the finder reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ContractViolation, FingerprintMismatch
from .model import Dataset, GeneratingParams
from .neighbors import NeighborProvider, Neighborhood
from .ordering import (
    ClusterOrdering,
    FINEX_FLAVOR,
    OrderingDraft,
    neighborhood_source,
    visit,
)
from .pqueue import StablePriorityQueue


@dataclass
class FinexIndex:
    """The built ordering plus everything needed to validate a query target.

    Immutable after construction; queries never write to it. `removals`
    (how often each object was pulled back out of the ordering) is build
    diagnostics and is not persisted.
    """

    ordering: ClusterOrdering
    metric_kind: str
    fingerprint: bytes
    removals: list[int] | None = field(default=None, repr=False)

    @property
    def params(self) -> GeneratingParams:
        return self.ordering.params

    @property
    def n(self) -> int:
        return len(self.ordering)

    @property
    def core_count(self) -> int:
        eps = self.params.epsilon
        return sum(1 for e in self.ordering if e.core_distance <= eps)

    def check_dataset(self, dataset: Dataset) -> None:
        if self.fingerprint != dataset.fingerprint():
            raise FingerprintMismatch(
                "index fingerprint does not match the supplied dataset"
            )


def queue_update(
    draft: OrderingDraft,
    queue: StablePriorityQueue,
    c: int,
    neighbors_c: Neighborhood,
) -> None:
    """Offer reachability via core object c to each of its neighbors.

    Unqueued unprocessed neighbors are inserted; queued ones are promoted
    when c offers a smaller reachability; processed non-cores are removed
    from the ordering and requeued when c improves on their recorded value.
    Every neighbor additionally adopts c as finder when c is denser than
    its current one.
    """
    epsilon = draft.params.epsilon
    cd = draft.core_dist[c]
    if cd > epsilon:
        raise ContractViolation(f"object {c} is not core; cannot drive a queue update")
    c_size = draft.nsize[c]
    nsize = draft.nsize
    finder = draft.finder
    for q, d in neighbors_c.entries:
        rdist = cd if cd >= d else d
        if not draft.processed[q]:
            if q not in queue:
                draft.reach[q] = rdist
                queue.insert(q, rdist)
            elif rdist < draft.reach[q]:
                draft.reach[q] = rdist
                queue.update(q, rdist)
        elif draft.core_dist[q] > epsilon and rdist < draft.reach[q]:
            draft.remove(q)
            draft.reach[q] = rdist
            queue.insert(q, rdist)
        if c_size > nsize[finder[q]]:
            finder[q] = c
    return None


def finex_build(
    provider: NeighborProvider,
    epsilon: float,
    min_pts: int,
    seed_order: Sequence[int] | None = None,
) -> FinexIndex:
    """Build the index for the generating pair the provider was built for."""
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
            queue_update(draft, queue, seed, nb)
            while queue:
                p = queue.pop()
                if draft.visited[p]:
                    # Requeued non-core: core distance and neighborhood size
                    # are order-independent and kept from the first visit.
                    draft.append(p)
                    continue
                nbp = get_nb(p)
                visit(draft, provider, p, nbp)
                draft.append(p)
                if draft.core_dist[p] <= epsilon:
                    queue_update(draft, queue, p, nbp)
    return FinexIndex(
        ordering=draft.finalize(FINEX_FLAVOR),
        metric_kind=provider.dataset.metric.kind,
        fingerprint=provider.dataset.fingerprint(),
        removals=draft.removals,
    )
