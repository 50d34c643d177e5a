"""HTTP JSON API serving one loaded index for interactive exploration.

The server owns a single immutable index per process; rebuilding means
restarting. All endpoints are read-only, so any number of requests may run
concurrently and always see the same answers. Infinite distances are
encoded as JSON null.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .baseline import dbscan_exact
from .build import FinexIndex
from .errors import ContractViolation
from .extract import border_recall, query_clustering
from .model import Dataset, EUCLIDEAN, NOISE
from .neighbors import NeighborProvider
from .ordering import ClusterOrdering
from .queries import epsilon_star_query, minpts_star_query


@dataclass
class Baselines:
    optics: ClusterOrdering


@dataclass
class ServiceState:
    index: FinexIndex
    dataset: Dataset
    provider: NeighborProvider
    baselines: Baselines | None = None


class MetaResponse(BaseModel):
    n: int
    epsilon: float
    min_pts: int
    metric: str
    fingerprint: str
    core_count: int


class ReachabilityEntry(BaseModel):
    pos: int
    object_id: int
    r: float | None
    c: float | None
    n: int


class ClusteringStats(BaseModel):
    distance_computations: int
    candidates: int
    millis: float


class ClusteringResponse(BaseModel):
    labels: list[int]
    num_clusters: int
    noise_count: int
    stats: ClusteringStats


class CompareResponse(BaseModel):
    finex_recall: float
    optics_recall: float
    exact_cluster_count: int


class PointsResponse(BaseModel):
    available: bool
    points: list[list[float]] | None = None


def _finite_or_none(x: float) -> float | None:
    return None if math.isinf(x) else x


def create_app(state: ServiceState | None = None) -> FastAPI:
    """Build the API app; `state` may be attached later via app startup."""
    app = FastAPI(title="finex")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    app.state.finex = state

    def ready() -> ServiceState:
        st = app.state.finex
        if st is None:
            raise HTTPException(status_code=503, detail="index not loaded yet")
        return st

    @app.get("/api/meta", response_model=MetaResponse)
    def meta():
        st = ready()
        return MetaResponse(
            n=st.index.n,
            epsilon=st.index.params.epsilon,
            min_pts=st.index.params.min_pts,
            metric=st.index.metric_kind,
            fingerprint=st.index.fingerprint.hex(),
            core_count=st.index.core_count,
        )

    @app.get("/api/reachability", response_model=list[ReachabilityEntry])
    def reachability():
        st = ready()
        return [
            ReachabilityEntry(
                pos=e.position,
                object_id=e.object_id,
                r=_finite_or_none(e.reachability),
                c=_finite_or_none(e.core_distance),
                n=e.neighborhood_size,
            )
            for e in st.index.ordering.entries
        ]

    @app.get("/api/clustering", response_model=ClusteringResponse)
    def clustering(
        epsilon_star: float | None = Query(default=None),
        minpts_star: int | None = Query(default=None),
        mode: str = Query(default="exact"),
    ):
        st = ready()
        if (epsilon_star is None) == (minpts_star is None):
            raise HTTPException(
                status_code=400,
                detail="exactly one of epsilon_star and minpts_star is required",
            )
        if mode not in ("exact", "approx"):
            raise HTTPException(status_code=400, detail=f"unknown mode {mode!r}")
        try:
            if epsilon_star is not None:
                if mode == "approx":
                    t0 = time.perf_counter()
                    labeling = query_clustering(st.index.ordering, epsilon_star)
                    millis = (time.perf_counter() - t0) * 1000.0
                    stats = ClusteringStats(
                        distance_computations=0, candidates=0, millis=millis
                    )
                else:
                    labeling, qs = epsilon_star_query(st.index, st.provider, epsilon_star)
                    stats = ClusteringStats(
                        distance_computations=qs.distance_computations,
                        candidates=qs.candidates,
                        millis=qs.millis,
                    )
            else:
                if mode == "approx":
                    raise HTTPException(
                        status_code=400, detail="approx mode applies to epsilon_star only"
                    )
                labeling, qs = minpts_star_query(st.index, st.provider, minpts_star)
                stats = ClusteringStats(
                    distance_computations=qs.distance_computations,
                    candidates=qs.candidates,
                    millis=qs.millis,
                )
        except ContractViolation as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ClusteringResponse(
            labels=labeling.assignment,
            num_clusters=labeling.num_clusters,
            noise_count=labeling.noise_count,
            stats=stats,
        )

    @app.get("/api/compare", response_model=CompareResponse)
    def compare(epsilon_star: float = Query(...)):
        st = ready()
        if st.baselines is None:
            raise HTTPException(status_code=409, detail="baselines disabled")
        params = st.index.params
        try:
            finex_approx = query_clustering(st.index.ordering, epsilon_star)
            optics_approx = query_clustering(st.baselines.optics, epsilon_star)
        except ContractViolation as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        exact = dbscan_exact(st.provider, epsilon_star, params.min_pts)
        return CompareResponse(
            finex_recall=border_recall(finex_approx, exact),
            optics_recall=border_recall(optics_approx, exact),
            exact_cluster_count=exact.num_clusters,
        )

    @app.get("/api/points", response_model=PointsResponse)
    def points():
        st = ready()
        ds = st.dataset
        if ds.metric.kind == EUCLIDEAN and ds.vectors.shape[1] == 2:
            return PointsResponse(available=True, points=ds.vectors.tolist())
        return PointsResponse(available=False)

    return app


NOISE_LABEL = NOISE
