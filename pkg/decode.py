#!/usr/bin/env python3
"""Consistency sets L(c) and the sequential-region and maximum-likelihood decoders"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Any, FrozenSet, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from config import DEFAULT_CODEWORD_BUDGET, DEFAULT_EXACT_BUDGET
from errors import BudgetExceededError, DomainError, LengthMismatchError
from gf4 import (
    MAX_PACKED_LENGTH,
    Word,
    all_coordinates_differ,
    hamming_distance,
    iter_full_weight_chunks,
    iter_space_chunks,
    pack_array,
    words_to_array,
)

logger = logging.getLogger(__name__)

# Received-word x codeword x symbol cells compared at once on the unpacked path
_MASK_CELLS = 2 ** 24


class Decoder(Enum):
    """Decoding rule"""
    ML = "ml"
    SEQUENTIAL = "seq"


class CodewordList:
    """Ordered, immutable list of distinct codewords of one length"""

    def __init__(self, words: Sequence[Word]):
        words = tuple(words)
        self._symbols = words_to_array(words)
        self._symbols.setflags(write=False)
        if len(set(words)) != len(words):
            raise DomainError("Codewords must be distinct")
        self._words = words
        self._packed = pack_array(self._symbols) if self.n <= MAX_PACKED_LENGTH else None

    @classmethod
    def from_code(cls, code, limit: int = DEFAULT_CODEWORD_BUDGET) -> "CodewordList":
        """Codewords of a LinearCode in message-index order"""
        return cls.from_array(code.codeword_array(limit))

    @classmethod
    def from_array(cls, symbols: np.ndarray) -> "CodewordList":
        return cls([Word.from_array(row) for row in np.atleast_2d(symbols)])

    @property
    def n(self) -> int:
        return self._symbols.shape[1]

    @property
    def size(self) -> int:
        return len(self._words)

    @property
    def words(self) -> Tuple[Word, ...]:
        return self._words

    @property
    def symbols(self) -> np.ndarray:
        return self._symbols

    @property
    def packed(self) -> Optional[np.ndarray]:
        return self._packed

    def __len__(self) -> int:
        return len(self._words)

    def __getitem__(self, index: int) -> Word:
        return self._words[index]

    def __iter__(self) -> Iterator[Word]:
        return iter(self._words)

    def check_length(self, n: int):
        if n != self.n:
            raise LengthMismatchError(self.n, n)


@dataclass(frozen=True)
class DecodeOutcome:
    """Decoded codeword index (None when no codeword is consistent) and the tie set size"""
    index: Optional[int]
    tie_count: int

    @classmethod
    def inconsistent(cls) -> "DecodeOutcome":
        return cls(index=None, tie_count=0)

    @property
    def decoded(self) -> bool:
        return self.index is not None

    def to_dict(self) -> Dict[str, Any]:
        return {"result": "decoded" if self.decoded else "inconsistent", "index": self.index, "tie_count": self.tie_count}


def is_consistent(y: Word, c: Word) -> bool:
    """y could have been received when c was sent"""
    return hamming_distance(y, c) == len(c)


def intersection_size(c_i: Word, c_j: Word) -> int:
    """|L(c_i) & L(c_j)| = 3^(n-s) * 2^s for s = d(c_i, c_j) >= 1"""
    s = hamming_distance(c_i, c_j)
    if s == 0:
        raise DomainError("intersection_size needs two different words")
    n = len(c_i)
    return 3 ** (n - s) * 2 ** s


def _check_enumeration(operation: str, required: int, limit: int):
    if required > limit:
        raise BudgetExceededError(operation, required, limit)


def iter_consistency_chunks(c: Word, limit: int = DEFAULT_EXACT_BUDGET) -> Iterator[np.ndarray]:
    """Packed members of L(c) in chunks"""
    _check_enumeration("Enumerating L(c)", 3 ** len(c), limit)
    packed = np.uint64(c.packed)
    for chunk in iter_full_weight_chunks(len(c)):
        yield chunk ^ packed


def consistency_set(c: Word, limit: int = 2 ** 20) -> List[Word]:
    """Every word differing from c in all coordinates"""
    return [
        Word.from_packed(int(p), len(c))
        for chunk in iter_consistency_chunks(c, limit)
        for p in chunk
    ]


def common_consistency_count(words: Sequence[Word], limit: int = DEFAULT_EXACT_BUDGET) -> int:
    """|L(w_1) & ... & L(w_m)| by enumerating L(w_1)"""
    if not words:
        raise DomainError("Need at least one word")
    n = len(words[0])
    for word in words:
        if len(word) != n:
            raise LengthMismatchError(n, len(word))
    _check_enumeration("Intersecting consistency sets", 3 ** n * len(words), limit)
    total = 0
    for chunk in iter_consistency_chunks(words[0], limit):
        keep = np.ones(chunk.shape[0], dtype=bool)
        for word in words[1:]:
            keep &= all_coordinates_differ(chunk, word.packed, n)
        total += int(np.count_nonzero(keep))
    return total


def consistency_mask(received: np.ndarray, codewords: CodewordList, packed: bool = False) -> np.ndarray:
    """(T x M) boolean: received word t differs from codeword m in every coordinate

    received is a (T x n) symbol array, or a (T,) packed array when packed=True.
    """
    if packed:
        if codewords.packed is None:
            raise LengthMismatchError(MAX_PACKED_LENGTH, codewords.n, what="packed decoding (maximum n)")
        y = np.asarray(received, dtype=np.uint64)
        return all_coordinates_differ(y[:, None], codewords.packed[None, :], codewords.n)

    received = np.atleast_2d(np.asarray(received, dtype=np.uint8))
    codewords.check_length(received.shape[1])
    if codewords.packed is not None:
        return all_coordinates_differ(pack_array(received)[:, None], codewords.packed[None, :], codewords.n)

    rows = max(1, _MASK_CELLS // (codewords.size * codewords.n))
    parts = [
        (received[start:start + rows, None, :] != codewords.symbols[None, :, :]).all(axis=2)
        for start in range(0, received.shape[0], rows)
    ]
    return np.concatenate(parts, axis=0) if parts else np.zeros((0, codewords.size), dtype=bool)


def sequential_decode(y: Word, codewords: CodewordList) -> DecodeOutcome:
    """First codeword in list order that is consistent with y"""
    mask = consistency_mask(y.to_array()[None, :], codewords)[0]
    tie_count = int(np.count_nonzero(mask))
    if tie_count == 0:
        return DecodeOutcome.inconsistent()
    return DecodeOutcome(index=int(np.argmax(mask)), tie_count=tie_count)


def ml_decode(y: Word, codewords: CodewordList, rng: np.random.Generator) -> DecodeOutcome:
    """Uniformly random codeword among those consistent with y"""
    mask = consistency_mask(y.to_array()[None, :], codewords)[0]
    candidates = np.flatnonzero(mask)
    if candidates.size == 0:
        return DecodeOutcome.inconsistent()
    choice = int(rng.integers(0, candidates.size))
    return DecodeOutcome(index=int(candidates[choice]), tie_count=int(candidates.size))


def decode_batch(
    received: np.ndarray,
    codewords: CodewordList,
    decoder: Decoder = Decoder.ML,
    rng: Optional[np.random.Generator] = None,
    packed: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """Decode many received words; returns (indices with -1 for inconsistent, tie counts)"""
    mask = consistency_mask(received, codewords, packed=packed)
    ties = mask.sum(axis=1)
    if decoder is Decoder.SEQUENTIAL:
        chosen = np.argmax(mask, axis=1)
    else:
        if rng is None:
            raise DomainError("ML decoding needs a random generator for tie-breaking")
        draws = rng.integers(0, np.maximum(ties, 1))
        chosen = np.argmax(np.cumsum(mask, axis=1) > draws[:, None], axis=1)
    indices = np.where(ties > 0, chosen, -1).astype(np.int64)
    return indices, ties.astype(np.int64)


def realized_regions(
    codewords: CodewordList,
    decoder: Decoder = Decoder.SEQUENTIAL,
    rng: Optional[np.random.Generator] = None,
    limit: int = 2 ** 20,
) -> List[FrozenSet[Word]]:
    """Decoding regions D_1..D_M a decoder induces on F4^n"""
    n = codewords.n
    _check_enumeration("Realizing decoding regions over F4^n", 4 ** n, limit)
    regions: List[set] = [set() for _ in range(codewords.size)]
    for chunk in iter_space_chunks(n):
        indices, _ = decode_batch(chunk, codewords, decoder, rng, packed=True)
        for packed, index in zip(chunk, indices):
            if index >= 0:
                regions[index].add(Word.from_packed(int(packed), n))
    return [frozenset(region) for region in regions]
