"""Command-line front end: build an index, query it, compare against the
baselines, or serve it over HTTP.

Exit codes: 0 success, 2 usage error, 3 data error, 4 contract violation
(query parameter outside the index's admissible range, stale index).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import io
from .baseline import dbscan_exact, optics_build
from .build import finex_build
from .errors import ContractViolation, DataFormatError
from .extract import border_recall, query_clustering
from .model import EUCLIDEAN, JACCARD, MATRIX
from .neighbors import AUTO, BACKENDS, build_provider
from .queries import QueryStats, epsilon_star_query, exact_equivalent, minpts_star_query


class UsageError(Exception):
    pass


_DATA_METRIC = {"sets": JACCARD, "vectors": EUCLIDEAN, "matrix": MATRIX}


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset file")
    p.add_argument("--data", required=True, choices=sorted(_DATA_METRIC))
    p.add_argument(
        "--metric", required=True, choices=sorted(_DATA_METRIC.values())
    )
    p.add_argument("--standardize", action="store_true", help="vectors only")
    p.add_argument("--skip-header", action="store_true", help="vectors only")
    p.add_argument("--backend", default=AUTO, choices=(AUTO,) + BACKENDS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finex")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an index file")
    _add_dataset_flags(b)
    b.add_argument("--epsilon", type=float, required=True)
    b.add_argument("--minpts", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="query a built index")
    _add_dataset_flags(q)
    q.add_argument("--index", required=True)
    q.add_argument("--epsilon-star", type=float, default=None)
    q.add_argument("--minpts-star", type=int, default=None)
    q.add_argument("--approx", action="store_true")
    q.add_argument("--out", required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_query)

    c = sub.add_parser("compare", help="border recall of the linear-scan labelings")
    _add_dataset_flags(c)
    c.add_argument("--epsilon", type=float, required=True)
    c.add_argument("--minpts", type=int, required=True)
    c.add_argument("--epsilon-stars", required=True, help="comma-separated thresholds")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("serve", help="serve a built index over HTTP")
    _add_dataset_flags(s)
    s.add_argument("--index", required=True)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--with-baselines", action="store_true")
    s.set_defaults(func=cmd_serve)
    return parser


def _load_dataset(args):
    expected = _DATA_METRIC[args.data]
    if args.metric != expected:
        raise UsageError(f"--data {args.data} requires --metric {expected}")
    if args.data == "sets":
        return io.load_sets(args.input)
    if args.data == "vectors":
        return io.load_vectors(args.input, args.standardize, args.skip_header)
    return io.load_matrix(args.input)


def _seed_order(seed: int | None, n: int):
    if seed is None:
        return None
    return random.Random(seed).sample(range(n), n)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


def cmd_build(args) -> int:
    if args.epsilon < 0:
        raise UsageError("--epsilon must be >= 0")
    if args.minpts < 1:
        raise UsageError("--minpts must be >= 1")
    dataset = _load_dataset(args)
    t0 = time.perf_counter()
    provider = build_provider(dataset, args.epsilon, args.backend)
    index = finex_build(
        provider, args.epsilon, args.minpts, _seed_order(args.seed, dataset.n)
    )
    seconds = time.perf_counter() - t0
    io.save_index(args.out, index)
    payload = {
        "n": dataset.n,
        "raw_records": dataset.raw_count,
        "dedup_ratio": dataset.n / dataset.raw_count,
        "core_count": index.core_count,
        "build_seconds": seconds,
        "out": args.out,
    }
    _emit(
        args,
        payload,
        [
            f"objects: {dataset.n} (from {dataset.raw_count} records, "
            f"dedup ratio {payload['dedup_ratio']:.3f})",
            f"cores: {index.core_count}",
            f"build time: {seconds:.3f}s",
            f"index written to {args.out}",
        ],
    )
    return 0


def cmd_query(args) -> int:
    if (args.epsilon_star is None) == (args.minpts_star is None):
        raise UsageError("exactly one of --epsilon-star and --minpts-star is required")
    if args.approx and args.epsilon_star is None:
        raise UsageError("--approx applies to --epsilon-star queries only")
    dataset = _load_dataset(args)
    index = io.load_index(args.index, dataset=dataset)
    provider = build_provider(dataset, index.params.epsilon, args.backend)
    if args.epsilon_star is not None:
        if args.approx:
            t0 = time.perf_counter()
            labeling = query_clustering(index.ordering, args.epsilon_star)
            stats = QueryStats(millis=(time.perf_counter() - t0) * 1000.0)
        else:
            labeling, stats = epsilon_star_query(index, provider, args.epsilon_star)
    else:
        labeling, stats = minpts_star_query(index, provider, args.minpts_star)
    io.write_labeling(args.out, labeling, dataset.raw_map)
    noise_pct = 100.0 * labeling.noise_count / len(labeling)
    payload = {
        "clusters": labeling.num_clusters,
        "noise_count": labeling.noise_count,
        "noise_pct": noise_pct,
        "candidates": stats.candidates,
        "distance_computations": stats.distance_computations,
        "millis": stats.millis,
        "out": args.out,
    }
    _emit(
        args,
        payload,
        [
            f"clusters: {labeling.num_clusters}",
            f"noise: {labeling.noise_count} ({noise_pct:.1f}%)",
            f"candidates verified: {stats.candidates}",
            f"distance computations: {stats.distance_computations}",
            f"wall time: {stats.millis:.2f}ms",
            f"labeling written to {args.out}",
        ],
    )
    return 0


def cmd_compare(args) -> int:
    if args.epsilon < 0:
        raise UsageError("--epsilon must be >= 0")
    dataset = _load_dataset(args)
    try:
        eps_stars = [float(v) for v in args.epsilon_stars.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --epsilon-stars {args.epsilon_stars!r}")
    if not eps_stars:
        raise UsageError("--epsilon-stars must name at least one threshold")
    seed_order = _seed_order(args.seed, dataset.n)
    provider = build_provider(dataset, args.epsilon, args.backend)
    index = finex_build(provider, args.epsilon, args.minpts, seed_order)
    optics = optics_build(provider, args.epsilon, args.minpts, seed_order)
    rows = []
    for es in eps_stars:
        exact = dbscan_exact(provider, es, args.minpts)
        finex_approx = query_clustering(index.ordering, es)
        optics_approx = query_clustering(optics, es)
        exact_labeling, _ = epsilon_star_query(index, provider, es)
        rows.append(
            {
                "epsilon_star": es,
                "finex_recall": border_recall(finex_approx, exact),
                "optics_recall": border_recall(optics_approx, exact),
                "exact_query_ok": exact_equivalent(exact_labeling, exact, provider, es),
            }
        )
    lines = ["epsilon_star  finex_recall  optics_recall  exact_query_ok"]
    for r in rows:
        lines.append(
            f"{r['epsilon_star']:<12g}  {r['finex_recall']:<12.3f}  "
            f"{r['optics_recall']:<13.3f}  {str(r['exact_query_ok']).lower()}"
        )
    _emit(args, {"rows": rows}, lines)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import Baselines, ServiceState, create_app

    dataset = _load_dataset(args)
    index = io.load_index(args.index, dataset=dataset)
    provider = build_provider(dataset, index.params.epsilon, args.backend)
    baselines = None
    if args.with_baselines:
        baselines = Baselines(
            optics=optics_build(provider, index.params.epsilon, index.params.min_pts)
        )
    app = create_app(ServiceState(index, dataset, provider, baselines))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataFormatError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except ContractViolation as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run())
