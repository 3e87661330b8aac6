"""Bit-packed vector index with exact scaled-L2 retrieval.

Retrieval multiplies the binary query vector by l/2 + 1 before the L2
ranking so that shared features dominate absent ones.  With binary data
rows this reduces to integer arithmetic: for query popcount Q, row
popcount P and intersection popcount A,

    4 * d^2 = Q * (l + 2)^2 + 4 * P - 4 * A * (l + 2)

which the kernels compute exactly, so ranking and reported distances are
deterministic.  The scan is exact (flat) over all rows.

File format (little-endian): magic ``DSIX``, u32 version=1, u32 l,
u64 count, then count records of ceil(l/8) bytes; bit i of a record is
byte i//8, bit i%8, LSB-first.
"""

from __future__ import annotations

import logging
import math
import struct
from dataclasses import dataclass

import numpy as np

from dsx import kernels
from dsx.errors import DsxError, IndexFormatError, LengthMismatch
from dsx.features import FeatureVector, featurize_trees, validate_vector_length
from dsx.ingestion import Corpus

log = logging.getLogger(__name__)

MAGIC = b"DSIX"
VERSION = 1
_HEADER = struct.Struct("<4sIIQ")

DEFAULT_K = 5000


@dataclass(frozen=True)
class Candidate:
    change_id: int
    distance: float


class VectorIndex:
    """count x l binary matrix, one row per corpus change, in id order."""

    def __init__(self, l: int, packed: np.ndarray):
        row_bytes = (l + 7) // 8
        if packed.ndim != 2 or packed.shape[1] != row_bytes or packed.dtype != np.uint8:
            raise ValueError(f"expected a (count, {row_bytes}) uint8 matrix")
        self.l = l
        self.packed = np.ascontiguousarray(packed)
        self._words: np.ndarray | None = None
        self._row_pop: np.ndarray | None = None

    @property
    def count(self) -> int:
        return int(self.packed.shape[0])

    @staticmethod
    def from_vectors(l: int, vectors: list[FeatureVector]) -> "VectorIndex":
        row_bytes = (l + 7) // 8
        packed = np.zeros((len(vectors), row_bytes), dtype=np.uint8)
        for i, vec in enumerate(vectors):
            if vec.l != l:
                raise LengthMismatch(f"vector {i} has l={vec.l}, index l={l}")
            packed[i] = np.frombuffer(vec.packed, dtype=np.uint8)
        return VectorIndex(l, packed)

    @staticmethod
    def from_bit_rows(rows: list[list[int]]) -> "VectorIndex":
        """Build directly from 0/1 rows (testing helper)."""
        if not rows:
            raise ValueError("need at least one row")
        l = len(rows[0])
        packed = np.stack(
            [
                np.packbits(np.asarray(r, dtype=np.uint8), bitorder="little")
                for r in rows
            ]
        )
        return VectorIndex(l, packed)

    def _as_words(self) -> np.ndarray:
        if self._words is None:
            self._words = _pad_to_words(self.packed)
        return self._words

    def _row_popcounts(self) -> np.ndarray:
        if self._row_pop is None:
            self._row_pop = kernels.row_popcount(self._as_words())
        return self._row_pop


def _pad_to_words(packed: np.ndarray) -> np.ndarray:
    """Zero-pad packed byte rows to a whole number of uint64 words."""
    n, row_bytes = packed.shape
    word_bytes = ((row_bytes + 7) // 8) * 8
    if word_bytes != row_bytes:
        padded = np.zeros((n, word_bytes), dtype=np.uint8)
        padded[:, :row_bytes] = packed
    else:
        padded = np.ascontiguousarray(packed)
    return padded.view(np.uint64)


def build_index(corpus: Corpus, l: int = 1000, depth: int = 1) -> VectorIndex:
    """Featurize every change, in id order.  A change that fails to
    featurize (possible only for corpora that bypassed ingestion checks)
    gets an all-zero row so ids stay aligned."""
    validate_vector_length(l)
    row_bytes = (l + 7) // 8
    packed = np.zeros((len(corpus), row_bytes), dtype=np.uint8)
    for change in corpus:
        try:
            old_tree, new_tree = Corpus.parse_change(change)
            vec = featurize_trees(old_tree, new_tree, l, depth)
        except DsxError as exc:
            log.warning("change %d failed to featurize, storing zero row: %s",
                        change.id, exc)
            continue
        packed[change.id] = np.frombuffer(vec.packed, dtype=np.uint8)
    return VectorIndex(l, packed)


def retrieve(index: VectorIndex, v_query: FeatureVector, k: int) -> list[Candidate]:
    """The min(k, count) nearest rows to the scaled query by L2 distance,
    sorted by (distance, id).  Exact flat scan."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if v_query.l != index.l:
        raise LengthMismatch(f"query l={v_query.l}, index l={index.l}")
    if index.count == 0:
        return []
    l = index.l
    query_words = _pad_to_words(
        np.frombuffer(v_query.packed, dtype=np.uint8).reshape(1, -1)
    )[0]
    q_pop = int(kernels.row_popcount(query_words.reshape(1, -1))[0])
    inter = kernels.and_popcount(index._as_words(), query_words)
    row_pop = index._row_popcounts()
    # 4*d^2, exactly, in int64.
    quad = q_pop * (l + 2) ** 2 + 4 * row_pop - 4 * inter * (l + 2)
    k_eff = min(k, index.count)
    if k_eff < index.count:
        part = np.argpartition(quad, k_eff - 1)[:k_eff]
    else:
        part = np.arange(index.count)
    order = part[np.lexsort((part, quad[part]))]
    return [
        Candidate(int(i), math.sqrt(int(quad[i])) / 2.0) for i in order
    ]


def save_index(index: VectorIndex, path) -> None:
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, index.l, index.count))
        fh.write(index.packed.tobytes())


def load_index(path) -> VectorIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise IndexFormatError("file too short for header")
    magic, version, l, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise IndexFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise IndexFormatError(f"unsupported version {version}")
    row_bytes = (l + 7) // 8
    expected = _HEADER.size + count * row_bytes
    if len(data) != expected:
        raise IndexFormatError(
            f"expected {expected} bytes for {count} vectors, found {len(data)}"
        )
    body = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    return VectorIndex(l, body.reshape(count, row_bytes).copy())
