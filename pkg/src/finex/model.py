"""Core domain types: datasets, metrics, generating parameters, labelings.

Objects are addressed by integer ids in [0, n). Set data is deduplicated at
ingestion and every distinct set carries a duplicate count that weights all
neighborhood sizes downstream. Vector data is optionally standardized. An
explicit distance matrix can stand in for both when only pairwise distances
are known.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError

NOISE = -1

JACCARD = "jaccard"
EUCLIDEAN = "euclidean"
MATRIX = "matrix"

METRIC_KINDS = (JACCARD, EUCLIDEAN, MATRIX)


@dataclass(frozen=True)
class TokenSet:
    """A deduplicated set of integer tokens with its duplicate multiplicity."""

    tokens: tuple[int, ...]
    count: int = 1

    def __post_init__(self):
        if len(self.tokens) == 0:
            raise DataFormatError("empty token set")
        if self.count < 1:
            raise DataFormatError("duplicate count must be >= 1")
        if any(t < 0 for t in self.tokens):
            raise DataFormatError("tokens must be non-negative")
        if any(a >= b for a, b in zip(self.tokens, self.tokens[1:])):
            raise DataFormatError("tokens must be strictly increasing")


@dataclass(frozen=True)
class Metric:
    """Distance function tag, plus the matrix itself for the explicit kind."""

    kind: str
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind: {self.kind!r}")
        if self.kind == MATRIX:
            m = self.matrix
            if m is None:
                raise ValueError("explicit metric requires a matrix")
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise DataFormatError("distance matrix must be square")
            if np.any(m < 0):
                raise DataFormatError("distance matrix must be non-negative")
            if np.any(np.diagonal(m) != 0):
                raise DataFormatError("distance matrix must have a zero diagonal")
            if not np.array_equal(m, m.T):
                raise DataFormatError("distance matrix must be symmetric")
        elif self.matrix is not None:
            raise ValueError(f"{self.kind} metric does not take a matrix")


@dataclass(frozen=True)
class GeneratingParams:
    """The (epsilon, min_pts) pair an ordering or index is built for."""

    epsilon: float
    min_pts: int

    def __post_init__(self):
        if not (self.epsilon >= 0):
            raise ValueError("epsilon must be >= 0")
        if self.min_pts < 1:
            raise ValueError("min_pts must be >= 1")


def jaccard_distance(a: TokenSet | frozenset, b: TokenSet | frozenset) -> float:
    sa = frozenset(a.tokens) if isinstance(a, TokenSet) else a
    sb = frozenset(b.tokens) if isinstance(b, TokenSet) else b
    inter = len(sa & sb)
    union = len(sa) + len(sb) - inter
    return 1.0 - inter / union


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(((a - b) ** 2).sum()))


def distance(metric: Metric, a, b) -> float:
    """Distance between two objects under `metric`.

    For the explicit-matrix kind, `a` and `b` are object ids; otherwise they
    are the objects themselves (token sets or coordinate vectors).
    """
    if metric.kind == JACCARD:
        return jaccard_distance(a, b)
    if metric.kind == EUCLIDEAN:
        return euclidean_distance(a, b)
    n = metric.matrix.shape[0]
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError(f"object id out of range for {n}x{n} matrix")
    return float(metric.matrix[a, b])


def standardize(vectors: np.ndarray) -> np.ndarray:
    """Shift and scale each dimension to zero mean and unit population variance.

    Constant dimensions become all zeros instead of dividing by zero.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2 or vectors.shape[0] == 0:
        raise DataFormatError("standardize expects a non-empty 2-d array")
    mean = vectors.mean(axis=0)
    std = vectors.std(axis=0)
    out = vectors - mean
    nonzero = std > 0
    out[:, nonzero] /= std[nonzero]
    out[:, ~nonzero] = 0.0
    return out


def deduplicate(raw_sets: list) -> tuple[list[TokenSet], list[int]]:
    """Collapse identical token sets, keeping multiplicities.

    Accepts raw token sequences (possibly unsorted, possibly with repeats),
    and returns the distinct sets in first-appearance order plus the mapping
    from raw record id to deduplicated object id.
    """
    seen: dict[tuple[int, ...], int] = {}
    counts: list[int] = []
    tokens_by_id: list[tuple[int, ...]] = []
    mapping: list[int] = []
    for rec_no, raw in enumerate(raw_sets):
        key = tuple(sorted(set(raw)))
        if len(key) == 0:
            raise DataFormatError(f"record {rec_no}: empty set after normalization")
        oid = seen.get(key)
        if oid is None:
            oid = len(tokens_by_id)
            seen[key] = oid
            tokens_by_id.append(key)
            counts.append(1)
        else:
            counts[oid] += 1
        mapping.append(oid)
    sets = [TokenSet(tokens=t, count=c) for t, c in zip(tokens_by_id, counts)]
    return sets, mapping


@dataclass
class Dataset:
    """An in-memory dataset ready for clustering.

    Exactly one of `sets`, `vectors` is populated (or neither, for the
    explicit-matrix kind where the metric's matrix is the data). `counts`
    holds the duplicate multiplicity per object (all ones except for
    deduplicated set data). `raw_map` maps original record ids to object
    ids when deduplication collapsed records.
    """

    metric: Metric
    sets: list[TokenSet] | None = None
    vectors: np.ndarray | None = None
    raw_map: list[int] | None = None
    counts: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n == 0:
            raise DataFormatError("dataset is empty")
        if self.counts is None:
            if self.sets is not None:
                self.counts = np.array([s.count for s in self.sets], dtype=np.int64)
            else:
                self.counts = np.ones(self.n, dtype=np.int64)
        if self.metric.kind == EUCLIDEAN:
            if self.vectors is None:
                raise ValueError("euclidean metric requires vectors")
            if not np.all(np.isfinite(self.vectors)):
                raise DataFormatError("vector entries must be finite")
        if self.metric.kind == JACCARD and self.sets is None:
            raise ValueError("jaccard metric requires sets")
        # Frozensets are what the distance path works on; build them once.
        if self.sets is not None:
            self.token_sets = [frozenset(s.tokens) for s in self.sets]

    @property
    def n(self) -> int:
        if self.sets is not None:
            return len(self.sets)
        if self.vectors is not None:
            return self.vectors.shape[0]
        return self.metric.matrix.shape[0]

    @property
    def raw_count(self) -> int:
        return len(self.raw_map) if self.raw_map is not None else self.n

    def count(self, oid: int) -> int:
        return int(self.counts[oid])

    def distance(self, i: int, j: int) -> float:
        kind = self.metric.kind
        if kind == JACCARD:
            return jaccard_distance(self.token_sets[i], self.token_sets[j])
        if kind == EUCLIDEAN:
            return euclidean_distance(self.vectors[i], self.vectors[j])
        return float(self.metric.matrix[i, j])

    def fingerprint(self) -> bytes:
        """Content hash of the canonical dataset serialization (32 bytes)."""
        h = hashlib.sha256()
        if self.sets is not None:
            h.update(b"S")
            h.update(struct.pack("<Q", self.n))
            for s in self.sets:
                h.update(struct.pack("<QQ", s.count, len(s.tokens)))
                h.update(struct.pack(f"<{len(s.tokens)}Q", *s.tokens))
        elif self.vectors is not None:
            h.update(b"V")
            h.update(struct.pack("<QQ", *self.vectors.shape))
            h.update(np.ascontiguousarray(self.vectors, dtype=np.float64).tobytes())
        else:
            m = self.metric.matrix
            h.update(b"M")
            h.update(struct.pack("<Q", m.shape[0]))
            h.update(np.ascontiguousarray(m, dtype=np.float64).tobytes())
        return h.digest()


class Labeling:
    """Cluster assignment plus core status for every object of a dataset.

    `assignment[i]` is a cluster id in [0, num_clusters) or NOISE; noise
    objects are never core. Every cluster contains at least one core object.
    """

    __slots__ = ("assignment", "core_flags", "num_clusters")

    def __init__(self, assignment: list[int], core_flags: list[bool], num_clusters: int):
        self.assignment = assignment
        self.core_flags = core_flags
        self.num_clusters = num_clusters

    def __eq__(self, other):
        return (
            isinstance(other, Labeling)
            and self.assignment == other.assignment
            and self.core_flags == other.core_flags
            and self.num_clusters == other.num_clusters
        )

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def noise_ids(self) -> set[int]:
        return {i for i, c in enumerate(self.assignment) if c == NOISE}

    @property
    def noise_count(self) -> int:
        return sum(1 for c in self.assignment if c == NOISE)

    def members(self, cluster_id: int) -> set[int]:
        return {i for i, c in enumerate(self.assignment) if c == cluster_id}

    def validate(self) -> None:
        used = sorted({c for c in self.assignment if c != NOISE})
        if used != list(range(self.num_clusters)):
            raise AssertionError(f"cluster ids {used} not 0..{self.num_clusters - 1}")
        for cid in range(self.num_clusters):
            if not any(
                self.core_flags[i]
                for i, c in enumerate(self.assignment)
                if c == cid
            ):
                raise AssertionError(f"cluster {cid} has no core object")
        for i, c in enumerate(self.assignment):
            if c == NOISE and self.core_flags[i]:
                raise AssertionError(f"noise object {i} flagged core")


INF = math.inf
