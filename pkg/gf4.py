#!/usr/bin/env python3
"""Arithmetic in the four-element field F4 = {0, 1, a, b} and the word space F4^n

Elements are stored as 2-bit integers 0, 1, 2, 3 for 0, 1, a, b. Addition is the
exclusive-or of the two bits; multiplication goes through a 16-entry table.
Words pack symbol i into bits 2i and 2i+1 of a Python int, and the numpy helpers
at the bottom of the module use the same layout in uint64 arrays (n <= 32) for
the exhaustive enumerations.
"""

from enum import IntEnum
from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from errors import LengthMismatchError, ParseError


class F4Elem(IntEnum):
    """Element of F4; the channel letters A, B, C, D are 0, 1, a, b"""
    ZERO = 0
    ONE = 1
    A = 2
    B = 3

    @property
    def symbol(self) -> str:
        return "01ab"[self.value]

    @property
    def letter(self) -> str:
        return "ABCD"[self.value]

    def __str__(self) -> str:
        return self.symbol


# Multiplication table of F4, rows and columns in the order 0, 1, a, b
MUL_TABLE = np.array(
    [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ],
    dtype=np.uint8,
)
MUL_TABLE.setflags(write=False)

INV_TABLE = (None, F4Elem.ONE, F4Elem.B, F4Elem.A)

_SYMBOLS = {
    "0": 0, "1": 1, "a": 2, "b": 3,
    "2": 2, "3": 3,
    "A": 0, "B": 1, "C": 2, "D": 3,
}

ElemLike = Union[F4Elem, int, str]


def parse_elem(token: ElemLike) -> F4Elem:
    """Parse a field element from 0/1/a/b, a digit alias 2/3, or a channel letter A-D"""
    if isinstance(token, F4Elem):
        return token
    if isinstance(token, (int, np.integer)) and not isinstance(token, bool):
        if 0 <= int(token) <= 3:
            return F4Elem(int(token))
        raise ParseError(f"F4 element out of range: {token}")
    if isinstance(token, str) and token in _SYMBOLS:
        return F4Elem(_SYMBOLS[token])
    raise ParseError(f"Not an F4 symbol: {token!r}")


def f4_add(x: ElemLike, y: ElemLike) -> F4Elem:
    return F4Elem(parse_elem(x) ^ parse_elem(y))


def f4_mul(x: ElemLike, y: ElemLike) -> F4Elem:
    return F4Elem(int(MUL_TABLE[parse_elem(x), parse_elem(y)]))


def f4_inv(x: ElemLike) -> F4Elem:
    """Multiplicative inverse of a nonzero element"""
    inverse = INV_TABLE[parse_elem(x)]
    if inverse is None:
        raise ZeroDivisionError("0 has no inverse in F4")
    return inverse


def _even_bit_mask(n: int) -> int:
    """Bit 2i set for every coordinate i < n"""
    return (4 ** n - 1) // 3


def _pack_symbols(symbols: np.ndarray) -> int:
    """Four symbols per byte, little-endian"""
    padded = np.zeros(-(-symbols.size // 4) * 4, dtype=np.uint8)
    padded[: symbols.size] = symbols
    quads = padded.reshape(-1, 4)
    packed_bytes = quads[:, 0] | (quads[:, 1] << 2) | (quads[:, 2] << 4) | (quads[:, 3] << 6)
    return int.from_bytes(packed_bytes.tobytes(), "little")


def _unpack_symbols(packed: int, length: int) -> np.ndarray:
    raw = np.frombuffer(packed.to_bytes(-(-length // 4), "little"), dtype=np.uint8)
    quads = np.stack([(raw >> shift) & 3 for shift in (0, 2, 4, 6)], axis=1)
    return quads.reshape(-1)[:length].copy()


class Word:
    """Immutable word of n >= 1 symbols over F4"""

    __slots__ = ("_packed", "_length")

    def __init__(self, symbols: Iterable[ElemLike]):
        values = np.array([int(parse_elem(token)) for token in symbols], dtype=np.uint8)
        if values.size == 0:
            raise ParseError("A word needs at least one symbol")
        object.__setattr__(self, "_packed", _pack_symbols(values))
        object.__setattr__(self, "_length", int(values.size))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_packed(cls, packed: int, length: int) -> "Word":
        if length < 1:
            raise ParseError("A word needs at least one symbol")
        if packed < 0 or packed >> (2 * length):
            raise ParseError(f"Packed value does not fit {length} symbols")
        word = cls.__new__(cls)
        object.__setattr__(word, "_packed", int(packed))
        object.__setattr__(word, "_length", length)
        return word

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse "01ab", "0123" or "ABCD" forms; whitespace is ignored"""
        symbols = "".join(text.split())
        if not symbols:
            raise ParseError("Empty word")
        return cls(symbols)

    @classmethod
    def zero(cls, n: int) -> "Word":
        return cls.from_packed(0, n)

    @classmethod
    def from_array(cls, symbols: np.ndarray) -> "Word":
        values = np.asarray(symbols).ravel()
        if values.size == 0:
            raise ParseError("A word needs at least one symbol")
        if np.any((values < 0) | (values > 3)):
            raise ParseError("F4 symbols must lie in 0..3")
        return cls.from_packed(_pack_symbols(values.astype(np.uint8)), int(values.size))

    @property
    def packed(self) -> int:
        return self._packed

    @property
    def symbols(self) -> Tuple[F4Elem, ...]:
        return tuple(self)

    def to_array(self) -> np.ndarray:
        return _unpack_symbols(self._packed, self._length)

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index: int) -> F4Elem:
        if not isinstance(index, (int, np.integer)):
            raise TypeError("Word indices must be integers")
        if not 0 <= index < self._length:
            raise IndexError(f"coordinate {index} outside [0, {self._length})")
        return F4Elem((self._packed >> (2 * int(index))) & 3)

    def __iter__(self) -> Iterator[F4Elem]:
        for s in self.to_array():
            yield F4Elem(int(s))

    def __add__(self, other: "Word") -> "Word":
        _check_lengths(self, other)
        return Word.from_packed(self._packed ^ other._packed, self._length)

    # characteristic 2
    __sub__ = __add__

    def scale(self, factor: ElemLike) -> "Word":
        return Word.from_array(MUL_TABLE[parse_elem(factor)][self.to_array()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._length == other._length and self._packed == other._packed

    def __hash__(self) -> int:
        return hash((self._length, self._packed))

    def __str__(self) -> str:
        return "".join("01ab"[s] for s in self.to_array())

    def __repr__(self) -> str:
        return f"Word('{self}')"

    def __reduce__(self):
        return (Word.from_packed, (self._packed, self._length))


def _check_lengths(x: Word, y: Word):
    if len(x) != len(y):
        raise LengthMismatchError(len(x), len(y))


def hamming_distance(x: Word, y: Word) -> int:
    """Number of coordinates in which x and y differ"""
    _check_lengths(x, y)
    return hamming_weight(x + y)


def hamming_weight(x: Word) -> int:
    """Number of nonzero coordinates of x"""
    z = x.packed
    return bin((z | (z >> 1)) & _even_bit_mask(len(x))).count("1")


def all_words(n: int) -> Iterator[Word]:
    """Every word of F4^n in lexicographic packed order"""
    for packed in range(4 ** n):
        yield Word.from_packed(packed, n)


# ----- numpy helpers over symbol arrays (N x n, uint8) and packed uint64 arrays -----

MAX_PACKED_LENGTH = 32


def words_to_array(words: Sequence[Word]) -> np.ndarray:
    """Stack words of equal length into an (N x n) uint8 symbol array"""
    if not words:
        raise ParseError("No words given")
    n = len(words[0])
    for word in words:
        if len(word) != n:
            raise LengthMismatchError(n, len(word))
    return np.array([[int(s) for s in word] for word in words], dtype=np.uint8)


def array_to_words(symbols: np.ndarray) -> List[Word]:
    return [Word.from_array(row) for row in np.atleast_2d(symbols)]


def vec_mat(vector: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Row vector (k,) times matrix (k x n) over F4"""
    vector = np.asarray(vector, dtype=np.uint8)
    matrix = np.asarray(matrix, dtype=np.uint8)
    if vector.shape[0] != matrix.shape[0]:
        raise LengthMismatchError(matrix.shape[0], vector.shape[0], what="vector")
    if vector.shape[0] == 0:
        return np.zeros(matrix.shape[1], dtype=np.uint8)
    return np.bitwise_xor.reduce(MUL_TABLE[vector[:, None], matrix], axis=0)


def check_packable(n: int):
    if n > MAX_PACKED_LENGTH:
        raise LengthMismatchError(MAX_PACKED_LENGTH, n, what="packed enumeration (maximum n)")


def pack_array(symbols: np.ndarray) -> np.ndarray:
    """(N x n) symbols -> (N,) uint64 with symbol i in bits 2i, 2i+1"""
    symbols = np.atleast_2d(np.asarray(symbols, dtype=np.uint64))
    check_packable(symbols.shape[1])
    shifts = (2 * np.arange(symbols.shape[1])).astype(np.uint64)
    return np.bitwise_or.reduce(symbols << shifts[None, :], axis=1) if symbols.shape[1] else np.zeros(
        symbols.shape[0], dtype=np.uint64
    )


def unpack_array(packed: np.ndarray, n: int) -> np.ndarray:
    packed = np.asarray(packed, dtype=np.uint64)
    shifts = (2 * np.arange(n)).astype(np.uint64)
    return ((packed[:, None] >> shifts[None, :]) & np.uint64(3)).astype(np.uint8)


def even_mask(n: int) -> np.uint64:
    check_packable(n)
    return np.uint64(_even_bit_mask(n))


def nonzero_bits(z: np.ndarray, n: int) -> np.ndarray:
    """Per-coordinate nonzero flags of packed words, as bits at even positions"""
    return (z | (z >> np.uint64(1))) & even_mask(n)


def all_coordinates_differ(y: np.ndarray, c, n: int) -> np.ndarray:
    """Boolean mask: packed y differs from packed c in every coordinate"""
    z = np.bitwise_xor(np.asarray(y, dtype=np.uint64), np.asarray(c, dtype=np.uint64))
    return nonzero_bits(z, n) == even_mask(n)


def popcount64(values: np.ndarray) -> np.ndarray:
    """Population count of uint64 values (SWAR)"""
    v = np.asarray(values, dtype=np.uint64).copy()
    v -= (v >> np.uint64(1)) & np.uint64(0x5555555555555555)
    v = (v & np.uint64(0x3333333333333333)) + ((v >> np.uint64(2)) & np.uint64(0x3333333333333333))
    v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((v * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def packed_weights(packed: np.ndarray, n: int) -> np.ndarray:
    return popcount64(nonzero_bits(np.asarray(packed, dtype=np.uint64), n))


def _product_block(n_positions: int, offset: int, values: Tuple[int, ...]) -> np.ndarray:
    block = np.zeros(1, dtype=np.uint64)
    for i in range(n_positions):
        choices = np.array(values, dtype=np.uint64) << np.uint64(2 * (offset + i))
        block = (block[:, None] | choices[None, :]).ravel()
    return block


def _iter_product_chunks(n: int, values: Tuple[int, ...], chunk_positions: int) -> Iterator[np.ndarray]:
    check_packable(n)
    low = min(n, chunk_positions)
    base = _product_block(low, 0, values)
    for high in product(values, repeat=n - low):
        prefix = 0
        for i, symbol in enumerate(high):
            prefix |= symbol << (2 * (low + i))
        yield base | np.uint64(prefix)


def iter_full_weight_chunks(n: int, chunk_positions: int = 12) -> Iterator[np.ndarray]:
    """All 3^n words with no zero coordinate, packed, in chunks of at most 3^chunk_positions"""
    return _iter_product_chunks(n, (1, 2, 3), chunk_positions)


def iter_space_chunks(n: int, chunk_positions: int = 10) -> Iterator[np.ndarray]:
    """All 4^n words of F4^n, packed, in chunks of at most 4^chunk_positions"""
    return _iter_product_chunks(n, (0, 1, 2, 3), chunk_positions)
