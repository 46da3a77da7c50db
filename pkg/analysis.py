#!/usr/bin/env python3
"""Decoding error probabilities: exact enumeration, the coset count, and upper bounds"""

from dataclasses import dataclass, asdict
from enum import Enum
from fractions import Fraction
from typing import Dict, Any, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from scipy.optimize import bisect

from codes import LinearCode, WeightDistribution, distance_distribution, h4
from config import DEFAULT_COSET_BUDGET, DEFAULT_EXACT_BUDGET
from decode import CodewordList, Decoder, iter_consistency_chunks
from errors import BudgetExceededError, DomainError, LengthMismatchError
from gf4 import MAX_PACKED_LENGTH, MUL_TABLE, all_coordinates_differ, iter_full_weight_chunks, pack_array
from parallel import ChunkRunner

logger = logging.getLogger(__name__)

# Received-word x codeword pairs tested per block
_PAIR_BLOCK = 2 ** 23


class ErrorMethod(Enum):
    """How an ErrorReport was obtained"""
    EXACT = "exact-enum"
    COSET = "coset"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class ErrorReport:
    """Per-codeword, average and maximum decoding error probabilities"""
    method: ErrorMethod
    decoder: Decoder
    n: int
    size: int
    average: float
    maximum: Optional[float] = None
    per_codeword: Optional[Tuple[float, ...]] = None
    exact_average: Optional[Fraction] = None
    exact_per_codeword: Optional[Tuple[Fraction, ...]] = None
    trials: Optional[int] = None
    errors: Optional[int] = None
    half_width: Optional[float] = None
    sigmas: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.average <= 1.0:
            raise DomainError(f"Average error {self.average} outside [0, 1]")
        if self.maximum is not None and self.maximum + 1e-12 < self.average:
            raise DomainError(f"Maximum error {self.maximum} below average {self.average}")
        if self.method is not ErrorMethod.MONTE_CARLO and self.average <= 0.0:
            raise DomainError("Exact average error must be strictly positive")

    @property
    def is_exact(self) -> bool:
        return self.exact_average is not None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["method"] = self.method.value
        data["decoder"] = self.decoder.value
        data["exact_average"] = str(self.exact_average) if self.exact_average is not None else None
        if self.exact_per_codeword is not None:
            data["exact_per_codeword"] = [str(e) for e in self.exact_per_codeword]
        return data


def format_exact(value: Fraction, n: int) -> str:
    """"num/3^n" when value has denominator dividing 3^n, else the reduced fraction"""
    scaled = value * 3 ** n
    if scaled.denominator == 1:
        return f"{scaled.numerator}/3^{n}"
    return str(value)


def _exact_report(codewords: CodewordList, decoder: Decoder, errors: Sequence[Fraction],
                  method: ErrorMethod = ErrorMethod.EXACT) -> ErrorReport:
    average = sum(errors, Fraction(0)) / len(errors)
    maximum = max(errors)
    return ErrorReport(
        method=method,
        decoder=decoder,
        n=codewords.n,
        size=codewords.size,
        average=float(average),
        maximum=float(maximum),
        per_codeword=tuple(float(e) for e in errors),
        exact_average=average,
        exact_per_codeword=tuple(errors),
    )


def _check_exact(operation: str, codewords: CodewordList, limit: int):
    if codewords.size < 2:
        raise DomainError("A code needs at least two codewords")
    if codewords.n > MAX_PACKED_LENGTH:
        raise LengthMismatchError(MAX_PACKED_LENGTH, codewords.n, what=f"{operation} (maximum n)")
    required = 3 ** codewords.n * codewords.size
    if required > limit:
        raise BudgetExceededError(operation, required, limit, hint="use Monte Carlo simulation instead")


def _consistent_counts(chunk: np.ndarray, packed: np.ndarray, n: int) -> np.ndarray:
    """For each packed received word, the number of given codewords consistent with it"""
    counts = np.zeros(chunk.shape[0], dtype=np.int64)
    block = max(1, _PAIR_BLOCK // max(1, chunk.shape[0]))
    for start in range(0, packed.shape[0], block):
        part = packed[start:start + block]
        counts += all_coordinates_differ(chunk[:, None], part[None, :], n).sum(axis=1)
    return counts


def _sequential_overlaps(codewords: CodewordList, limit: int, threads: Optional[int]) -> List[int]:
    """|L(c_i) & (L(c_1) | ... | L(c_{i-1}))| for every i"""
    n = codewords.n
    packed = codewords.packed

    def overlap(i: int) -> int:
        if i == 0:
            return 0
        earlier = packed[:i]
        return sum(
            int(np.count_nonzero(_consistent_counts(chunk, earlier, n)))
            for chunk in iter_consistency_chunks(codewords[i], limit)
        )

    with ChunkRunner(threads) as runner:
        return runner.map(overlap, range(codewords.size), description="codewords", total=codewords.size)


def exact_error_sequential(codewords: CodewordList, limit: int = DEFAULT_EXACT_BUDGET,
                           threads: Optional[int] = None) -> ErrorReport:
    """Exact e_i of the first-consistent-codeword decoder"""
    _check_exact("Exact sequential error", codewords, limit)
    total = 3 ** codewords.n
    overlaps = _sequential_overlaps(codewords, limit, threads)
    return _exact_report(codewords, Decoder.SEQUENTIAL, [Fraction(o, total) for o in overlaps])


def exact_error_ml(codewords: CodewordList, limit: int = DEFAULT_EXACT_BUDGET,
                   threads: Optional[int] = None) -> ErrorReport:
    """Exact e_i of maximum-likelihood decoding with uniform tie-breaking"""
    _check_exact("Exact ML error", codewords, limit)
    n = codewords.n
    total = 3 ** n

    def error(i: int) -> Fraction:
        histogram = np.zeros(codewords.size + 1, dtype=np.int64)
        for chunk in iter_consistency_chunks(codewords[i], limit):
            ties = _consistent_counts(chunk, codewords.packed, n)
            histogram += np.bincount(ties, minlength=codewords.size + 1)
        # a received word consistent with t codewords is decoded wrongly with probability (t-1)/t
        missed = sum((Fraction(int(h) * (t - 1), t) for t, h in enumerate(histogram) if t and h), Fraction(0))
        return missed / total

    with ChunkRunner(threads) as runner:
        errors = runner.map(error, range(codewords.size), description="codewords", total=codewords.size)
    return _exact_report(codewords, Decoder.ML, errors)


def union_measure(codewords: CodewordList, limit: int = DEFAULT_EXACT_BUDGET,
                  threads: Optional[int] = None) -> int:
    """|L(c_1) | ... | L(c_M)|"""
    _check_exact("Union of consistency sets", codewords, limit)
    overlaps = _sequential_overlaps(codewords, limit, threads)
    return codewords.size * 3 ** codewords.n - sum(overlaps)


def average_error_from_union(union: int, n: int, size: int) -> Fraction:
    """Average error of any decoder whose regions cover the union: 1 - |union| / (3^n M)"""
    return 1 - Fraction(union, 3 ** n * size)


def coset_alpha(code: LinearCode, limit: int = DEFAULT_COSET_BUDGET) -> Tuple[int, Fraction]:
    """Number of cosets of the code that contain a full-weight word, and 1 - alpha/3^n"""
    n = code.n
    if n > MAX_PACKED_LENGTH:
        raise LengthMismatchError(MAX_PACKED_LENGTH, n, what="coset enumeration (maximum n)")
    if 3 ** n > limit:
        raise BudgetExceededError("Coset enumeration", 3 ** n, limit, hint="use Monte Carlo simulation instead")

    rref = code.reduced_generator
    pivots = code.information_set
    # reduce[r][c] = packed c * (row r of the reduced generator)
    reduce = [pack_array(MUL_TABLE[:, row]) for row in rref]

    representatives = np.zeros(0, dtype=np.uint64)
    for chunk in iter_full_weight_chunks(n):
        x = chunk.copy()
        for pivot, table in zip(pivots, reduce):
            coefficient = (x >> np.uint64(2 * pivot)) & np.uint64(3)
            x ^= table[coefficient.astype(np.int64)]
        representatives = np.union1d(representatives, np.unique(x))

    alpha = int(representatives.size)
    logger.debug("alpha = %d of 3^%d full-weight words", alpha, n)
    return alpha, 1 - Fraction(alpha, 3 ** n)


def coset_error_report(code: LinearCode, limit: int = DEFAULT_COSET_BUDGET, alpha: Optional[int] = None) -> ErrorReport:
    """ML error report from the coset count; every codeword has the same error

    Pass a precomputed alpha to skip the enumeration.
    """
    if alpha is None:
        alpha, _ = coset_alpha(code, limit)
    e_bar = 1 - Fraction(alpha, 3 ** code.n)
    return ErrorReport(
        method=ErrorMethod.COSET,
        decoder=Decoder.ML,
        n=code.n,
        size=code.size,
        average=float(e_bar),
        maximum=float(e_bar),
        exact_average=e_bar,
    )


def within_error_target(e_bar: Fraction, epsilon: float) -> bool:
    """Exact average error at most epsilon"""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    return e_bar <= Fraction(epsilon)


def meets_error_target(code: LinearCode, epsilon: float, limit: int = DEFAULT_COSET_BUDGET) -> Tuple[bool, int]:
    """alpha >= 3^n (1 - epsilon), i.e. average error at most epsilon"""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    alpha, e_bar = coset_alpha(code, limit)
    return within_error_target(e_bar, epsilon), alpha


# ----- upper bounds -----

Weights = Union[WeightDistribution, Sequence[Union[int, Fraction]]]


def bound_theorem1(weights: Weights) -> float:
    """(1/2) * sum over s >= 1 of A_s (2/3)^s"""
    counts = weights.counts if isinstance(weights, WeightDistribution) else tuple(weights)
    total = sum((Fraction(a) * Fraction(2, 3) ** s for s, a in enumerate(counts) if s >= 1 and a),
                Fraction(0))
    return float(total / 2)


def _check_params(size: int, d: int):
    if size < 2:
        raise DomainError(f"Need M >= 2, got {size}")
    if d < 1:
        raise DomainError(f"Need d >= 1, got {d}")


def bound_theorem2(size: int, d: int) -> Tuple[float, float]:
    """Average-error bounds (M-1)/2 (2/3)^d and M/2 (2/3)^d"""
    _check_params(size, d)
    factor = Fraction(2, 3) ** d
    return float(Fraction(size - 1, 2) * factor), float(Fraction(size, 2) * factor)


def bound_theorem3(size: int, d: int) -> Tuple[float, float]:
    """Maximum-error bounds (M-1) (2/3)^d and M (2/3)^d"""
    _check_params(size, d)
    factor = Fraction(2, 3) ** d
    return float((size - 1) * factor), float(size * factor)


def bound_theorem1_from_distance_distribution(codewords: Sequence, limit: int = DEFAULT_EXACT_BUDGET) -> float:
    """Weight-distribution bound computed from the pairwise distance distribution of an arbitrary code"""
    return bound_theorem1(distance_distribution(list(codewords), limit))


@dataclass(frozen=True)
class BoundReport:
    """The three families of upper bounds for one (M, d)"""
    size: int
    d: int
    theorem2_tight: float
    theorem2_loose: float
    theorem3_tight: float
    theorem3_loose: float
    theorem1: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def bound_report(size: int, d: int, weights: Optional[Weights] = None) -> BoundReport:
    t2_tight, t2_loose = bound_theorem2(size, d)
    t3_tight, t3_loose = bound_theorem3(size, d)
    return BoundReport(
        size=size,
        d=d,
        theorem2_tight=t2_tight,
        theorem2_loose=t2_loose,
        theorem3_tight=t3_tight,
        theorem3_loose=t3_loose,
        theorem1=bound_theorem1(weights) if weights is not None else None,
    )


# ----- asymptotics -----

def gv_exponent(x: float) -> float:
    """1 - H4(x) + x log4(2/3); the maximum-error bound of random codes decays while this is negative"""
    return 1.0 - h4(x) + x * math.log(2 / 3, 4)


def gv_threshold(xtol: float = 1e-9) -> Tuple[float, float]:
    """(beta, 1 - H4(beta)) where beta is the root of gv_exponent on [0.3, 0.6]"""
    beta = bisect(gv_exponent, 0.3, 0.6, xtol=xtol)
    return float(beta), 1.0 - h4(beta)


def shannon_rate_limit() -> float:
    """Channel capacity log2(4/3) in key bits per letter"""
    return math.log2(4 / 3)


def linear_rate_limit() -> float:
    """Half the capacity, the rate limit of the linear-code construction"""
    return 0.5 * math.log2(4 / 3)
