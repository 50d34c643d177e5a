import numpy as np
import pytest

from helpers import random_set_dataset, random_vector_dataset
from finex.baseline import dbscan_exact, optics_build
from finex.build import finex_build
from finex.demo import names
from finex.errors import ContractViolation
from finex.extract import approximate_clusters, border_recall, query_clustering
from finex.model import Dataset, EUCLIDEAN, Metric, NOISE
from finex.neighbors import BRUTE, build_provider
from finex.queries import exact_equivalent


def test_demo_finex_scan_dense(demo_index):
    clusters, noise = approximate_clusters(demo_index.ordering, 0.75)
    assert [names(c) for c in clusters] == [set("DAE"), set("HGIJFK")]
    assert names(noise) == set("CB")


def test_demo_optics_scan_dense(demo_optics):
    clusters, noise = approximate_clusters(demo_optics, 0.75)
    assert [names(c) for c in clusters] == [set("DE"), set("HIJK")]
    assert len(clusters[0]) == 2 and len(clusters[1]) == 4


def test_demo_finex_scan_at_generating_radius_is_exact(demo, demo_index):
    dataset, params, provider = demo
    scanned = query_clustering(demo_index.ordering, 1.0)
    oracle = dbscan_exact(provider, 1.0, 4)
    assert exact_equivalent(scanned, oracle, provider, 1.0)


def test_rejects_threshold_above_generating_radius(demo_index):
    with pytest.raises(ContractViolation):
        query_clustering(demo_index.ordering, 1.5)


def check_cluster_shape(ordering, eps_star):
    clusters, _ = approximate_clusters(ordering, eps_star)
    pos = {e.object_id: e.position for e in ordering.entries}
    for members in clusters:
        positions = [pos[m] for m in members]
        assert positions == list(range(positions[0], positions[0] + len(members)))
        head = ordering.entry(members[0])
        assert head.core_distance <= eps_star
        assert head.reachability > eps_star
        for m in members[1:]:
            assert ordering.entry(m).reachability <= eps_star
        last_pos = positions[-1]
        if last_pos < len(ordering):
            assert ordering.entries[last_pos].reachability > eps_star


def test_cluster_shape_demo(demo_index, demo_optics):
    for eps_star in (1.0, 0.75, 0.6, 0.0):
        check_cluster_shape(demo_index.ordering, eps_star)
        check_cluster_shape(demo_optics, eps_star)


def test_cluster_shape_random(rng):
    ds = random_vector_dataset(rng, n=150, dim=2)
    provider = build_provider(ds, 0.4, BRUTE)
    index = finex_build(provider, 0.4, 4)
    for eps_star in (0.4, 0.3, 0.2, 0.1):
        check_cluster_shape(index.ordering, eps_star)


def test_singleton_cluster_is_legal():
    pts = np.array([[0.0, 0.0], [10.0, 10.0]])
    ds = Dataset(metric=Metric(kind=EUCLIDEAN), vectors=pts)
    provider = build_provider(ds, 1.0, BRUTE)
    index = finex_build(provider, 1.0, 1)
    clusters, noise = approximate_clusters(index.ordering, 1.0)
    assert sorted(map(sorted, clusters)) == [[0], [1]]
    assert noise == []


def _non_noise(lab):
    return {i for i, c in enumerate(lab.assignment) if c != NOISE}


def test_dominance_and_completeness(rng):
    for make, eps in ((random_vector_dataset, 0.4), (random_set_dataset, 0.5)):
        ds = make(rng)
        min_pts = 4
        provider = build_provider(ds, eps, BRUTE)
        index = finex_build(provider, eps, min_pts)
        optics = optics_build(provider, eps, min_pts)
        sizes = {
            i: provider.range_query(i, eps).size for i in range(ds.n)
        }
        for frac in (1.0, 0.8, 0.6, 0.4, 0.2):
            eps_star = eps * frac
            finex_lab = query_clustering(index.ordering, eps_star)
            optics_lab = query_clustering(optics, eps_star)
            assert _non_noise(finex_lab) >= _non_noise(optics_lab)
            oracle = dbscan_exact(provider, eps_star, min_pts)
            for i in range(ds.n):
                is_border = (
                    oracle.assignment[i] != NOISE and not oracle.core_flags[i]
                )
                if is_border and sizes[i] < min_pts:
                    # Border now, non-core at the build radius: the index
                    # scan must never lose it to noise.
                    assert finex_lab.assignment[i] != NOISE
                if oracle.core_flags[i]:
                    assert finex_lab.assignment[i] != NOISE
                    assert optics_lab.assignment[i] != NOISE


def test_border_recall_identity(demo, demo_index):
    _, _, provider = demo
    exact = dbscan_exact(provider, 0.75, 4)
    assert border_recall(exact, exact) == 1.0


def test_border_recall_demo_counts(demo, demo_index, demo_optics):
    _, _, provider = demo
    exact = dbscan_exact(provider, 0.75, 4)
    finex_lab = query_clustering(demo_index.ordering, 0.75)
    optics_lab = query_clustering(demo_optics, 0.75)
    assert border_recall(finex_lab, exact) == pytest.approx(5 / 6)
    assert border_recall(optics_lab, exact) == pytest.approx(2 / 6)


def test_border_recall_one_at_generating_radius(demo, demo_index):
    _, _, provider = demo
    exact = dbscan_exact(provider, 1.0, 4)
    finex_lab = query_clustering(demo_index.ordering, 1.0)
    assert border_recall(finex_lab, exact) == 1.0


def test_border_recall_without_borders():
    pts = np.array([[0.0, 0.0], [10.0, 10.0]])
    ds = Dataset(metric=Metric(kind=EUCLIDEAN), vectors=pts)
    provider = build_provider(ds, 1.0, BRUTE)
    exact = dbscan_exact(provider, 1.0, 1)
    assert border_recall(exact, exact) == 1.0


def test_border_recall_rejects_mismatched_sets(demo, demo_index):
    _, _, provider = demo
    exact = dbscan_exact(provider, 0.75, 4)
    from finex.model import Labeling

    with pytest.raises(ValueError):
        border_recall(Labeling([NOISE], [False], 0), exact)
