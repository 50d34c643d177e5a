import random
import struct
import warnings

import numpy as np
import pytest

from helpers import random_set_dataset
from finex import io
from finex.build import finex_build
from finex.demo import demo_matrix, oid
from finex.errors import DataFormatError, FingerprintMismatch
from finex.model import Dataset, Metric
from finex.neighbors import BRUTE, build_provider
from finex.queries import epsilon_star_query


def test_load_sets_dedups(tmp_path):
    path = tmp_path / "sets.txt"
    path.write_text("1 2\n2 1\n3\n")
    ds = io.load_sets(path)
    assert [(s.tokens, s.count) for s in ds.sets] == [((1, 2), 2), ((3,), 1)]
    assert ds.raw_map == [0, 0, 1]


def test_load_sets_parse_error(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("a b\n")
    with pytest.raises(DataFormatError) as err:
        io.load_sets(path)
    assert "line 1" in str(err.value)


def test_load_sets_empty_record(tmp_path):
    path = tmp_path / "gap.txt"
    path.write_text("1 2\n\n3\n")
    with pytest.raises(DataFormatError) as err:
        io.load_sets(path)
    assert "line 2" in str(err.value)


def test_load_sets_count_conservation(tmp_path, rng):
    lines = []
    for _ in range(10_000):
        size = rng.randint(1, 6)
        lines.append(" ".join(str(rng.randrange(50)) for _ in range(size)))
    path = tmp_path / "big.txt"
    path.write_text("\n".join(lines) + "\n")
    ds = io.load_sets(path)
    assert sum(s.count for s in ds.sets) == 10_000
    assert ds.raw_count == 10_000


def test_load_vectors_standardize(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("0\n10\n")
    ds = io.load_vectors(path, standardize_flag=True)
    assert np.array_equal(ds.vectors, np.array([[-1.0], [1.0]]))


def test_load_vectors_plain(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("1,2\n3,4\n")
    ds = io.load_vectors(path)
    assert np.array_equal(ds.vectors, np.array([[1.0, 2.0], [3.0, 4.0]]))


def test_load_vectors_ragged(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("1,2\n3\n")
    with pytest.raises(DataFormatError) as err:
        io.load_vectors(path)
    assert "ragged" in str(err.value)


def test_load_vectors_non_numeric_and_non_finite(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("1,x\n")
    with pytest.raises(DataFormatError):
        io.load_vectors(path)
    path.write_text("1,nan\n")
    with pytest.raises(DataFormatError):
        io.load_vectors(path)
    path.write_text("1,inf\n")
    with pytest.raises(DataFormatError):
        io.load_vectors(path)


def test_load_vectors_skip_header(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("x,y\n1,2\n")
    ds = io.load_vectors(path, skip_header=True)
    assert ds.vectors.shape == (1, 2)


def test_load_matrix_roundtrip(tmp_path):
    m = demo_matrix()
    path = tmp_path / "m.csv"
    path.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in m) + "\n")
    ds = io.load_matrix(path)
    assert np.array_equal(ds.metric.matrix, m)


def test_index_roundtrip_demo(tmp_path, demo, demo_index):
    dataset, _, provider = demo
    path = tmp_path / "demo.fnx"
    io.save_index(path, demo_index)
    loaded = io.load_index(path, dataset=dataset)
    assert loaded.ordering.entries == demo_index.ordering.entries
    assert loaded.params == demo_index.params
    assert loaded.metric_kind == demo_index.metric_kind
    assert loaded.fingerprint == demo_index.fingerprint
    labeling, _ = epsilon_star_query(loaded, provider, 0.75)
    assert labeling.noise_ids == {oid("B")}


def test_index_roundtrip_random(tmp_path, rng):
    ds = random_set_dataset(rng)
    provider = build_provider(ds, 0.5, BRUTE)
    index = finex_build(provider, 0.5, 4)
    path = tmp_path / "r.fnx"
    io.save_index(path, index)
    loaded = io.load_index(path, dataset=ds)
    assert loaded.ordering.entries == index.ordering.entries


def test_index_bad_magic(tmp_path):
    path = tmp_path / "x.fnx"
    path.write_bytes(b"XXXX" + b"\0" * 64)
    with pytest.raises(DataFormatError) as err:
        io.load_index(path)
    assert "magic" in str(err.value)


def test_index_version_mismatch(tmp_path, demo_index):
    path = tmp_path / "v.fnx"
    io.save_index(path, demo_index)
    blob = bytearray(path.read_bytes())
    blob[4:8] = struct.pack("<I", 99)
    path.write_bytes(bytes(blob))
    with pytest.raises(DataFormatError) as err:
        io.load_index(path)
    assert "version" in str(err.value)


def test_index_truncated(tmp_path, demo_index):
    path = tmp_path / "t.fnx"
    io.save_index(path, demo_index)
    blob = path.read_bytes()
    path.write_bytes(blob[:-7])
    with pytest.raises(DataFormatError) as err:
        io.load_index(path)
    assert "truncated" in str(err.value)


def test_index_fingerprint_mismatch(tmp_path, demo_index):
    other_matrix = demo_matrix()
    other_matrix[0, 1] = other_matrix[1, 0] = 0.111
    other = Dataset(metric=Metric(kind="matrix", matrix=other_matrix))
    path = tmp_path / "f.fnx"
    io.save_index(path, demo_index)
    with pytest.raises(FingerprintMismatch):
        io.load_index(path, dataset=other)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        io.load_index(path, dataset=other, strict_fingerprint=False)
    assert caught


def test_builds_are_byte_identical(tmp_path, demo):
    dataset, params, provider = demo
    a = finex_build(provider, params.epsilon, params.min_pts)
    b = finex_build(provider, params.epsilon, params.min_pts)
    pa, pb = tmp_path / "a.fnx", tmp_path / "b.fnx"
    io.save_index(pa, a)
    io.save_index(pb, b)
    assert pa.read_bytes() == pb.read_bytes()


def test_write_labeling_demo(tmp_path, demo, demo_index):
    dataset, _, provider = demo
    labeling, _ = epsilon_star_query(demo_index, provider, 0.75)
    path = tmp_path / "labels.csv"
    io.write_labeling(path, labeling)
    lines = path.read_text().splitlines()
    assert lines[0] == "object_id,cluster_id,is_core"
    assert "1,-1,false" in lines
    assert len(lines) == 12


def test_write_labeling_expands_duplicates(tmp_path):
    from finex.model import Labeling

    labeling = Labeling([0], [True], 1)
    path = tmp_path / "dup.csv"
    io.write_labeling(path, labeling, raw_map=[0, 0])
    lines = path.read_text().splitlines()
    assert lines[1:] == ["0,0,true", "1,0,true"]


def test_write_labeling_all_noise(tmp_path):
    from finex.model import Labeling, NOISE

    labeling = Labeling([NOISE, NOISE], [False, False], 0)
    path = tmp_path / "noise.csv"
    io.write_labeling(path, labeling)
    rows = path.read_text().splitlines()[1:]
    assert all(row.split(",")[1] == "-1" for row in rows)
