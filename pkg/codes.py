#!/usr/bin/env python3
"""Linear codes over F4: encoding, enumeration, weight distributions and constructions"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Dict, Any, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import logging
import math
import threading

import galois
import numpy as np
from scipy.special import xlogy

from config import DEFAULT_CODEWORD_BUDGET, DEFAULT_EXACT_BUDGET, DEFAULT_GV_MAX_ATTEMPTS
from errors import (
    BudgetExceededError,
    CodeConstructionError,
    DomainError,
    LengthMismatchError,
    ParseError,
)
from gf4 import MUL_TABLE, Word, vec_mat, words_to_array

logger = logging.getLogger(__name__)

# Integer representation 0, 1, 2, 3 coincides with 0, 1, a, b
GF4 = galois.GF(4)

# Codewords materialized per chunk during enumeration (4^8)
CHUNK_MESSAGE_DIGITS = 8


@dataclass(frozen=True)
class WeightDistribution:
    """Counts A_0..A_n of codewords of each Hamming weight"""
    counts: Tuple[int, ...]

    def __post_init__(self):
        if not self.counts or self.counts[0] != 1:
            raise DomainError("A weight distribution has A_0 = 1")
        if any(c < 0 for c in self.counts):
            raise DomainError("Weight counts must be non-negative")

    @classmethod
    def from_mapping(cls, n: int, weights: Mapping[int, int]) -> "WeightDistribution":
        """Build from {weight: count}; A_0 defaults to 1"""
        counts = [0] * (n + 1)
        counts[0] = 1
        for s, count in weights.items():
            if not 0 <= s <= n:
                raise DomainError(f"Weight {s} outside [0, {n}]")
            counts[s] = count
        return cls(tuple(counts))

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def minimum_distance(self) -> Optional[int]:
        for s, count in enumerate(self.counts[1:], start=1):
            if count:
                return s
        return None

    def nonzero(self) -> Dict[int, int]:
        return {s: c for s, c in enumerate(self.counts) if c}

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "weights": {str(s): c for s, c in self.nonzero().items()}}


def _check_budget(operation: str, required: int, limit: int, hint: Optional[str] = None):
    if required > limit:
        raise BudgetExceededError(operation, required, limit, hint)


class LinearCode:
    """k-dimensional subspace of F4^n given by a rank-k generator matrix"""

    def __init__(self, generator: Union[np.ndarray, Sequence[Sequence[int]]], name: Optional[str] = None):
        matrix = np.array(generator, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
            raise CodeConstructionError(f"Generator must be a non-empty k x n matrix, got shape {matrix.shape}")
        if np.any((matrix < 0) | (matrix > 3)):
            raise CodeConstructionError("Generator entries must be F4 symbols 0..3")
        k, n = matrix.shape
        if k > n:
            raise CodeConstructionError(f"Dimension {k} exceeds length {n}")
        rank = int(np.linalg.matrix_rank(GF4(matrix)))
        if rank < k:
            raise CodeConstructionError(f"Generator rows are linearly dependent (rank {rank} < k = {k})")

        self._generator = matrix.astype(np.uint8)
        self._generator.setflags(write=False)
        self.name = name
        self._lock = threading.RLock()
        self._weights: Optional[WeightDistribution] = None
        self._pivots: Optional[Tuple[int, ...]] = None
        self._info_inverse: Optional[np.ndarray] = None
        self._rref: Optional[np.ndarray] = None

    @property
    def generator(self) -> np.ndarray:
        return self._generator

    @property
    def n(self) -> int:
        return self._generator.shape[1]

    @property
    def k(self) -> int:
        return self._generator.shape[0]

    @property
    def size(self) -> int:
        """M = 4^k"""
        return 4 ** self.k

    @property
    def label(self) -> str:
        d = self._weights.minimum_distance if self._weights else None
        params = f"[{self.n},{self.k},{d}]" if d else f"[{self.n},{self.k}]"
        return f"{self.name} {params}" if self.name else params

    def __repr__(self) -> str:
        return f"LinearCode({self.label})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return np.array_equal(self._generator, other._generator)

    def __hash__(self) -> int:
        return hash(self._generator.tobytes())

    # ----- encoding -----

    def encode(self, message: Word) -> Word:
        """message * G"""
        if len(message) != self.k:
            raise LengthMismatchError(self.k, len(message), what="message")
        return Word.from_array(vec_mat(message.to_array(), self._generator))

    def encode_array(self, messages: np.ndarray) -> np.ndarray:
        """(N x k) message symbols -> (N x n) codeword symbols"""
        messages = np.atleast_2d(np.asarray(messages, dtype=np.uint8))
        if messages.shape[1] != self.k:
            raise LengthMismatchError(self.k, messages.shape[1], what="message")
        products = MUL_TABLE[messages[:, :, None], self._generator[None, :, :]]
        return np.bitwise_xor.reduce(products, axis=1)

    def message_array(self, indices: np.ndarray) -> np.ndarray:
        """Message digits of codeword indices, first digit most significant"""
        indices = np.asarray(indices, dtype=np.int64)
        shifts = 2 * np.arange(self.k - 1, -1, -1)
        return ((indices[:, None] >> shifts[None, :]) & 3).astype(np.uint8)

    # ----- enumeration -----

    def iter_codeword_chunks(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> Iterator[np.ndarray]:
        """All 4^k codewords as (chunk x n) arrays; codeword i has message digits of i in base 4"""
        _check_budget(f"Enumerating the {self.k}-dimensional code", self.size, limit)
        yield from _iter_span_chunks(*_split_span(self._generator))

    def codeword_array(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
        """(M x n) array of all codewords in message-index order"""
        return np.concatenate(list(self.iter_codeword_chunks(limit)), axis=0)

    def codewords(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> Iterator[Word]:
        for chunk in self.iter_codeword_chunks(limit):
            for row in chunk:
                yield Word.from_array(row)

    def weight_distribution(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> WeightDistribution:
        with self._lock:
            if self._weights is None:
                counts = np.zeros(self.n + 1, dtype=np.int64)
                for chunk in self.iter_codeword_chunks(limit):
                    counts += np.bincount(np.count_nonzero(chunk, axis=1), minlength=self.n + 1)
                self._weights = WeightDistribution(tuple(int(c) for c in counts))
                logger.debug("Weight distribution of %s: %s", self.label, self._weights.nonzero())
            return self._weights

    def minimum_distance(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> int:
        return self.weight_distribution(limit).minimum_distance

    # ----- codeword to message -----

    @property
    def information_set(self) -> Tuple[int, ...]:
        """Pivot columns of the reduced row echelon form of G"""
        self._ensure_inverse()
        return self._pivots

    @property
    def reduced_generator(self) -> np.ndarray:
        """Reduced row echelon form of G; pivot entries are 1"""
        self._ensure_inverse()
        return self._rref

    def _ensure_inverse(self):
        with self._lock:
            if self._pivots is None:
                rref = np.asarray(GF4(self._generator.astype(np.int64)).row_reduce())
                pivots = tuple(int(np.flatnonzero(row)[0]) for row in rref[: self.k])
                columns = GF4(self._generator[:, list(pivots)].astype(np.int64))
                rref = rref[: self.k].astype(np.uint8)
                rref.setflags(write=False)
                self._rref = rref
                self._info_inverse = np.asarray(np.linalg.inv(columns), dtype=np.uint8)
                self._pivots = pivots

    def message_of(self, codeword: Word) -> Word:
        """Message m with m * G == codeword"""
        if len(codeword) != self.n:
            raise LengthMismatchError(self.n, len(codeword), what="codeword")
        self._ensure_inverse()
        symbols = codeword.to_array()
        message = vec_mat(symbols[list(self._pivots)], self._info_inverse)
        if not np.array_equal(vec_mat(message, self._generator), symbols):
            raise DomainError(f"{codeword} is not a codeword of {self.label}")
        return Word.from_array(message)

    def messages_of_array(self, codewords: np.ndarray) -> np.ndarray:
        """Vectorized message_of for rows already known to be codewords"""
        self._ensure_inverse()
        info = np.asarray(codewords, dtype=np.uint8)[:, list(self._pivots)]
        products = MUL_TABLE[info[:, :, None], self._info_inverse[None, :, :]]
        return np.bitwise_xor.reduce(products, axis=1)


def _span(rows: np.ndarray) -> np.ndarray:
    """All 4^r combinations of r rows, first row most significant"""
    arr = np.zeros((1, rows.shape[1]), dtype=np.uint8)
    for row in rows:
        scaled = MUL_TABLE[:, row]
        arr = (arr[:, None, :] ^ scaled[None, :, :]).reshape(-1, rows.shape[1])
    return arr


def _split_span(rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Leading rows, and the full span of the last CHUNK_MESSAGE_DIGITS rows"""
    suffix = min(rows.shape[0], CHUNK_MESSAGE_DIGITS)
    return rows[: rows.shape[0] - suffix], _span(rows[rows.shape[0] - suffix:])


def _iter_span_chunks(head: np.ndarray, base: np.ndarray) -> Iterator[np.ndarray]:
    for prefix in product(range(4), repeat=head.shape[0]):
        yield base ^ vec_mat(np.array(prefix, dtype=np.uint8), head)


def distance_distribution(codewords: Sequence[Word], limit: int = DEFAULT_EXACT_BUDGET) -> Tuple[Fraction, ...]:
    """A_s = |{(i, j) : d(c_i, c_j) = s}| / M for an arbitrary code"""
    arr = words_to_array(list(codewords))
    m, n = arr.shape
    _check_budget("Pairwise distance distribution", m * m, limit)
    counts = np.zeros(n + 1, dtype=np.int64)
    for row in arr:
        counts += np.bincount(np.count_nonzero(arr != row, axis=1), minlength=n + 1)
    return tuple(Fraction(int(c), m) for c in counts)


# ----- constructions -----

def _parse_symbol_row(text: str) -> List[int]:
    """Field symbols 0 1 a b (or 2 3); channel letters A-D are rejected here"""
    letters = [ch for ch in text if ch.isupper()]
    if letters:
        raise ParseError(f"Generator rows take field symbols 0 1 a b, not channel letter {letters[0]!r}")
    return [int(s) for s in Word.parse(text)]


def quasi_cyclic_from_first_row(
    blocks: Union[str, Sequence[str]], block_count: int = 8, block_size: int = 5, name: Optional[str] = None
) -> LinearCode:
    """Generator whose row i shifts every block of the first row cyclically right by i"""
    parts = blocks.split() if isinstance(blocks, str) else list(blocks)
    if len(parts) != block_count:
        raise CodeConstructionError(f"Expected {block_count} blocks, got {len(parts)}")
    try:
        parsed = [_parse_symbol_row(part) for part in parts]
    except ParseError as e:
        raise CodeConstructionError(f"Malformed block: {e}") from e
    for part, symbols in zip(parts, parsed):
        if len(symbols) != block_size:
            raise CodeConstructionError(f"Block {part!r} has {len(symbols)} symbols, expected {block_size}")

    first = np.array(parsed, dtype=np.uint8)
    rows = [np.roll(first, shift, axis=1).ravel() for shift in range(block_size)]
    return LinearCode(np.array(rows), name=name)


def shorten(code: LinearCode, position: int = 0, name: Optional[str] = None) -> LinearCode:
    """The [n-1, k-1] code of codewords that are 0 at position, with that coordinate removed"""
    if code.k < 2:
        raise CodeConstructionError(f"Cannot shorten a code of dimension {code.k}")
    if not 0 <= position < code.n:
        raise DomainError(f"Position {position} outside [0, {code.n})")

    g = GF4(code.generator.astype(np.int64))
    column = g[:, position].copy()
    nonzero = np.flatnonzero(np.asarray(column))
    if nonzero.size == 0:
        raise CodeConstructionError(f"Every codeword is 0 at position {position}; shortening is degenerate")
    pivot = int(nonzero[0])
    pivot_row = g[pivot] / column[pivot]
    for i in range(code.k):
        if i != pivot and column[i] != 0:
            g[i] = g[i] - column[i] * pivot_row
    kept = np.delete(np.asarray(g), pivot, axis=0)
    kept = np.delete(kept, position, axis=1)
    return LinearCode(kept, name=name)


def gv_random_code(
    n: int,
    d: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_GV_MAX_ATTEMPTS,
    limit: int = DEFAULT_CODEWORD_BUDGET,
) -> LinearCode:
    """Grow a code one random row at a time while every codeword keeps weight >= d"""
    if not 0 < d <= n:
        raise DomainError(f"Need 0 < d <= n, got n={n}, d={d}")

    rows: List[np.ndarray] = []
    while len(rows) < n and 4 ** (len(rows) + 1) <= limit:
        # span of the accepted rows, visited chunk by chunk
        head, base = _split_span(np.array(rows, dtype=np.uint8).reshape(len(rows), n))
        for attempt in range(max_attempts):
            candidate = rng.integers(0, 4, size=n, dtype=np.uint8)
            # c + lambda*r = lambda*(lambda^-1 c + r), so checking c + r over C suffices
            if all(np.count_nonzero(chunk ^ candidate, axis=1).min() >= d for chunk in _iter_span_chunks(head, base)):
                break
        else:
            logger.debug("No row accepted after %d attempts at k=%d", max_attempts, len(rows))
            break
        logger.debug("Accepted row %d after %d attempts", len(rows) + 1, attempt + 1)
        rows.append(candidate)

    if not rows:
        raise CodeConstructionError(f"No code of length {n} with minimum distance {d} found in {max_attempts} attempts")

    code = LinearCode(np.array(rows), name=f"GV({n},{d})")
    found = code.minimum_distance(limit)
    if found < d:
        raise CodeConstructionError(f"Constructed code has minimum distance {found} < {d}")
    return code


def h4(x: float) -> float:
    """Quaternary entropy x log4 3 - x log4 x - (1-x) log4 (1-x)"""
    if not 0 <= x <= 1:
        raise DomainError(f"h4 is defined on [0, 1], got {x}")
    return float((x * math.log(3) - xlogy(x, x) - xlogy(1 - x, 1 - x)) / math.log(4))


def gv_rate_bound(d_over_n: float) -> float:
    """Rate 1 - H4(d/n) reachable by the random construction"""
    if not 0 <= d_over_n <= 0.75:
        raise DomainError(f"d/n must lie in [0, 3/4], got {d_over_n}")
    return 1.0 - h4(d_over_n)


# ----- code file format: "n k" then k rows of n symbols -----

def parse_code_text(text: str, name: Optional[str] = None) -> LinearCode:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("Empty code file")
    header = lines[0].split()
    if len(header) != 2 or not all(part.isdigit() for part in header):
        raise ParseError(f"Expected header 'n k', got {lines[0]!r}")
    n, k = int(header[0]), int(header[1])
    rows = lines[1:]
    if len(rows) != k:
        raise ParseError(f"Header declares k={k} rows, found {len(rows)}")
    matrix = []
    for number, row in enumerate(rows, start=1):
        symbols = _parse_symbol_row(row)
        if len(symbols) != n:
            raise ParseError(f"Row {number} has {len(symbols)} symbols, expected n={n}")
        matrix.append(symbols)
    return LinearCode(matrix, name=name)


def format_code_text(code: LinearCode) -> str:
    lines = [f"{code.n} {code.k}"]
    lines.extend("".join("01ab"[s] for s in row) for row in code.generator)
    return "\n".join(lines) + "\n"


def read_code_file(path: Path) -> LinearCode:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"Cannot read code file {path}: {e}") from e
    return parse_code_text(text, name=path.stem)


def write_code_file(code: LinearCode, path: Path) -> Path:
    path = Path(path)
    path.write_text(format_code_text(code))
    return path
