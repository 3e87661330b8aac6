"""Vector index and retrieval tests."""

import math
import random

import numpy as np
import pytest

from oracle import l2_ranking_reference

from dsx.errors import IndexFormatError, LengthMismatch
from dsx.features import FeatureVector, featurize_query
from dsx.grammar import Query
from dsx.index import VectorIndex, build_index, load_index, retrieve, save_index
from dsx.synth import make_corpus


def vec_from_bits(bits):
    return FeatureVector.from_indices(len(bits), [i for i, b in enumerate(bits) if b])


def random_vector(rng, l):
    return vec_from_bits([rng.randrange(2) for _ in range(l)])


def test_scaling_worked_example():
    index = VectorIndex.from_bit_rows([[1, 1, 1], [0, 0, 0]])
    hits = retrieve(index, vec_from_bits([0, 0, 1]), k=2)
    assert [h.change_id for h in hits] == [0, 1]
    assert abs(hits[0].distance - math.sqrt(4.25)) < 1e-9
    assert abs(hits[1].distance - math.sqrt(6.25)) < 1e-9


def test_zero_query_distances_are_popcounts():
    rows = [[1, 1, 0, 0], [0, 0, 0, 0], [1, 1, 1, 1], [0, 1, 0, 0]]
    index = VectorIndex.from_bit_rows(rows)
    hits = retrieve(index, vec_from_bits([0, 0, 0, 0]), k=4)
    assert [h.change_id for h in hits] == [1, 3, 0, 2]  # by popcount, ties by id
    for hit in hits:
        assert abs(hit.distance - math.sqrt(sum(rows[hit.change_id]))) < 1e-12


def test_retrieval_matches_brute_force_oracle():
    rng = random.Random(17)
    l = 32
    rows = [[rng.randrange(2) for _ in range(l)] for _ in range(50)]
    index = VectorIndex.from_bit_rows(rows)
    for trial in range(10):
        qbits = [rng.randrange(2) for _ in range(l)]
        got = retrieve(index, vec_from_bits(qbits), k=50)
        want = l2_ranking_reference(rows, qbits)
        assert [h.change_id for h in got] == [i for i, _ in want]
        for hit, (_, dist) in zip(got, want):
            assert abs(hit.distance - dist) < 1e-9


def test_matching_features_outweigh_absence():
    # p shares a bit with q; m shares none but has smaller popcount.
    l = 8
    q = [0, 0, 0, 0, 0, 0, 0, 1]
    p = [1, 1, 1, 1, 1, 1, 1, 1]
    m = [0] * 8
    index = VectorIndex.from_bit_rows([m, p])
    hits = retrieve(index, vec_from_bits(q), k=2)
    assert hits[0].change_id == 1  # the sharing row wins despite its size


def test_k_monotonic_prefix():
    rng = random.Random(5)
    rows = [[rng.randrange(2) for _ in range(16)] for _ in range(30)]
    index = VectorIndex.from_bit_rows(rows)
    q = vec_from_bits([rng.randrange(2) for _ in range(16)])
    small = retrieve(index, q, k=7)
    large = retrieve(index, q, k=19)
    assert [h.change_id for h in small] == [h.change_id for h in large][:7]


def test_retrieve_length_mismatch():
    index = VectorIndex.from_bit_rows([[1, 0, 1, 0]])
    with pytest.raises(LengthMismatch):
        retrieve(index, vec_from_bits([1, 0]), k=1)


def test_build_index_counts_and_determinism(motivating_corpus, tmp_path):
    index = build_index(motivating_corpus, l=1000)
    assert index.count == 3
    again = build_index(motivating_corpus, l=1000)
    p1, p2 = tmp_path / "a.idx", tmp_path / "b.idx"
    save_index(index, p1)
    save_index(again, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_build_empty_corpus():
    from dsx.ingestion import Corpus

    index = build_index(Corpus(), l=1000)
    assert index.count == 0
    assert retrieve(index, FeatureVector.from_indices(1000, []), k=5) == []


def test_save_load_round_trip(tmp_path):
    rng = random.Random(99)
    corpus = make_corpus(40, seed=2)
    index = build_index(corpus, l=1000)
    path = tmp_path / "x.idx"
    save_index(index, path)
    loaded = load_index(path)
    assert loaded.l == index.l and loaded.count == index.count
    for _ in range(10):
        q = random_vector(rng, 1000)
        a = retrieve(index, q, k=10)
        b = retrieve(loaded, q, k=10)
        assert a == b


def test_load_rejects_truncated_file(tmp_path):
    corpus = make_corpus(10, seed=1)
    index = build_index(corpus, l=1000)
    path = tmp_path / "x.idx"
    save_index(index, path)
    data = path.read_bytes()
    path.write_bytes(data[:-3])
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "x.idx"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_file_size_formula(tmp_path):
    rng = random.Random(3)
    n, l = 200, 1000
    packed = np.packbits(
        np.array([[rng.randrange(2) for _ in range(l)] for _ in range(n)],
                 dtype=np.uint8),
        axis=1, bitorder="little",
    )
    index = VectorIndex(l, packed)
    path = tmp_path / "s.idx"
    save_index(index, path)
    assert path.stat().st_size == 20 + n * math.ceil(l / 8)


def test_query_scaling_uses_indexed_query_vector(motivating_corpus, motivating_query):
    index = build_index(motivating_corpus, l=1000)
    hits = retrieve(index, featurize_query(motivating_query, l=1000), k=3)
    assert len(hits) == 3
    assert hits[0].distance <= hits[1].distance <= hits[2].distance
