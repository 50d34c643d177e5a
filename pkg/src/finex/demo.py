"""A small hand-checkable demo dataset.

Eleven objects named A..K (ids 0..10) over an explicit distance matrix with
two density regions and one outlier. All pairs not listed below sit at
distance 2.0, far beyond the generating radius of 1.0, so they never
interact. With min_pts = 4 exactly six objects are core (C, D, H, I, J, K).
Used throughout the test suite as a golden fixture and by the CLI docs as a
runnable example.
"""

from __future__ import annotations

import math

import numpy as np

from .model import Dataset, GeneratingParams, Metric, MATRIX

NAMES = "ABCDEFGHIJK"

_R5_4 = math.sqrt(5) / 4  # 0.5590...
_IR2 = math.sqrt(0.5)  # 0.7071...

# Symmetric closure is applied below; one entry per unordered pair.
_PAIRS = {
    ("A", "C"): _R5_4,
    ("A", "D"): 0.75,
    ("B", "C"): 1.0,
    ("C", "D"): _IR2,
    ("C", "E"): 1.0,
    ("D", "E"): _IR2,
    ("D", "F"): 1.0,
    ("F", "I"): 0.75,
    ("G", "H"): _R5_4,
    ("G", "J"): 1.0,
    ("H", "I"): _IR2,
    ("H", "J"): _R5_4,
    ("H", "K"): 1.0,
    ("I", "J"): 0.75,
    ("I", "K"): _IR2,
    ("J", "K"): _R5_4,
}

EPSILON = 1.0
MIN_PTS = 4


def demo_matrix() -> np.ndarray:
    n = len(NAMES)
    m = np.full((n, n), 2.0)
    np.fill_diagonal(m, 0.0)
    for (a, b), d in _PAIRS.items():
        i, j = NAMES.index(a), NAMES.index(b)
        m[i, j] = m[j, i] = d
    return m


def demo_dataset() -> tuple[Dataset, GeneratingParams]:
    dataset = Dataset(metric=Metric(kind=MATRIX, matrix=demo_matrix()))
    return dataset, GeneratingParams(epsilon=EPSILON, min_pts=MIN_PTS)


def oid(name: str) -> int:
    return NAMES.index(name)


def names(ids) -> set[str]:
    return {NAMES[i] for i in ids}
