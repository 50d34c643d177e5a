"""Dataset ingestion, index persistence, and labeling output.

File formats:

* set data: one record per line, whitespace-separated non-negative integer
  tokens; records are deduplicated at load with multiplicities kept
* vector data: CSV of floats, uniform column count, optional header line
* matrix data: CSV holding a full symmetric n x n distance matrix
* index files: fixed-width little-endian binary, magic "FNX1"
* labelings: CSV `object_id,cluster_id,is_core`, one row per original
  (pre-deduplication) record, noise encoded as cluster id -1

The index layout is: magic (4 bytes), format version (u32), metric tag
(u8), epsilon (f64), min_pts (u64), n (u64), dataset fingerprint (32
bytes), then n records of (object_id u64, C f64, R f64, N u64, F u64) in
permutation order. Infinities are IEEE positive infinity.
"""

from __future__ import annotations

import math
import struct
import warnings
from pathlib import Path

import numpy as np

from .build import FinexIndex
from .errors import DataFormatError, FingerprintMismatch
from .model import (
    Dataset,
    EUCLIDEAN,
    GeneratingParams,
    JACCARD,
    Labeling,
    MATRIX,
    Metric,
    deduplicate,
    standardize,
)
from .ordering import ClusterOrdering, FINEX_FLAVOR, IndexEntry

MAGIC = b"FNX1"
FORMAT_VERSION = 1

_METRIC_TAGS = {JACCARD: 1, EUCLIDEAN: 2, MATRIX: 3}
_TAG_METRICS = {v: k for k, v in _METRIC_TAGS.items()}

_HEADER = struct.Struct("<IBdQQ")
_RECORD = struct.Struct("<QddQQ")


def load_sets(path) -> Dataset:
    """Read set data, deduplicating records as they come in."""
    raw: list[list[int]] = []
    text = Path(path).read_text()
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = []
        for tok in line.split():
            try:
                value = int(tok)
            except ValueError:
                raise DataFormatError(f"line {line_no}: unparsable token {tok!r}")
            if value < 0:
                raise DataFormatError(f"line {line_no}: negative token {value}")
            tokens.append(value)
        if not tokens:
            raise DataFormatError(f"line {line_no}: empty record")
        raw.append(tokens)
    if not raw:
        raise DataFormatError("no records in set file")
    sets, mapping = deduplicate(raw)
    return Dataset(metric=Metric(kind=JACCARD), sets=sets, raw_map=mapping)


def _load_float_table(path, skip_header: bool) -> np.ndarray:
    rows: list[list[float]] = []
    text = Path(path).read_text()
    lines = text.splitlines()
    if skip_header and lines:
        lines = lines[1:]
    width = None
    for line_no, line in enumerate(lines, start=2 if skip_header else 1):
        if not line.strip():
            raise DataFormatError(f"line {line_no}: empty row")
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise DataFormatError(
                f"line {line_no}: ragged row ({len(cells)} columns, expected {width})"
            )
        row = []
        for cell in cells:
            try:
                value = float(cell)
            except ValueError:
                raise DataFormatError(f"line {line_no}: non-numeric cell {cell.strip()!r}")
            if not math.isfinite(value):
                raise DataFormatError(f"line {line_no}: non-finite cell {cell.strip()!r}")
            row.append(value)
        rows.append(row)
    if not rows:
        raise DataFormatError("no rows in file")
    return np.array(rows, dtype=np.float64)


def load_vectors(path, standardize_flag: bool = False, skip_header: bool = False) -> Dataset:
    arr = _load_float_table(path, skip_header)
    if standardize_flag:
        arr = standardize(arr)
    return Dataset(metric=Metric(kind=EUCLIDEAN), vectors=arr)


def load_matrix(path) -> Dataset:
    arr = _load_float_table(path, skip_header=False)
    return Dataset(metric=Metric(kind=MATRIX, matrix=arr))


def save_index(path, index: FinexIndex) -> None:
    ordering = index.ordering
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(
            _HEADER.pack(
                FORMAT_VERSION,
                _METRIC_TAGS[index.metric_kind],
                ordering.params.epsilon,
                ordering.params.min_pts,
                len(ordering),
            )
        )
        f.write(index.fingerprint)
        for e in ordering.entries:
            f.write(
                _RECORD.pack(
                    e.object_id,
                    e.core_distance,
                    e.reachability,
                    e.neighborhood_size,
                    e.finder,
                )
            )


def load_index(path, dataset: Dataset | None = None, strict_fingerprint: bool = True) -> FinexIndex:
    blob = Path(path).read_bytes()
    if blob[:4] != MAGIC:
        raise DataFormatError(f"bad magic {blob[:4]!r} in index file")
    offset = 4
    if len(blob) < offset + _HEADER.size + 32:
        raise DataFormatError("truncated index file header")
    version, tag, epsilon, min_pts, n = _HEADER.unpack_from(blob, offset)
    if version != FORMAT_VERSION:
        raise DataFormatError(
            f"index format version {version} not supported (expected {FORMAT_VERSION})"
        )
    if tag not in _TAG_METRICS:
        raise DataFormatError(f"unknown metric tag {tag}")
    offset += _HEADER.size
    fingerprint = blob[offset : offset + 32]
    offset += 32
    if len(blob) != offset + n * _RECORD.size:
        raise DataFormatError("truncated index file body")
    entries = []
    for pos in range(1, n + 1):
        oid, c, r, nsize, finder = _RECORD.unpack_from(blob, offset)
        offset += _RECORD.size
        entries.append(
            IndexEntry(
                object_id=oid,
                position=pos,
                core_distance=c,
                reachability=r,
                neighborhood_size=nsize,
                finder=finder,
            )
        )
    ordering = ClusterOrdering(
        entries, GeneratingParams(epsilon=epsilon, min_pts=min_pts), FINEX_FLAVOR
    )
    index = FinexIndex(
        ordering=ordering, metric_kind=_TAG_METRICS[tag], fingerprint=fingerprint
    )
    if dataset is not None and fingerprint != dataset.fingerprint():
        if strict_fingerprint:
            raise FingerprintMismatch(
                "index fingerprint does not match the supplied dataset"
            )
        warnings.warn("index fingerprint does not match the supplied dataset")
    return index


def write_labeling(path, labeling: Labeling, raw_map: list[int] | None = None) -> None:
    """Write one row per original record, expanding deduplicated objects."""
    mapping = raw_map if raw_map is not None else list(range(len(labeling)))
    with open(path, "w") as f:
        f.write("object_id,cluster_id,is_core\n")
        for raw_id, oid in enumerate(mapping):
            flag = "true" if labeling.core_flags[oid] else "false"
            f.write(f"{raw_id},{labeling.assignment[oid]},{flag}\n")
