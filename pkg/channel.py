#!/usr/bin/env python3
"""The four-letter channel whose output letter always differs from the input letter"""

from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Dict, Any, Optional, Tuple
import logging
import math

import numpy as np
from scipy.stats import entropy

from errors import DomainError, LengthMismatchError
from gf4 import ElemLike, Word, parse_elem

logger = logging.getLogger(__name__)

ALPHABET_SIZE = 4

# OTHERS[x][r]: the r-th letter different from x, in alphabet order
OTHERS = np.array(
    [[y for y in range(ALPHABET_SIZE) if y != x] for x in range(ALPHABET_SIZE)],
    dtype=np.uint8,
)
OTHERS.setflags(write=False)


@dataclass(frozen=True)
class ChannelSpec:
    """Q(y|x) = 0 if y == x, 1/3 otherwise"""
    alphabet_size: int = ALPHABET_SIZE

    def law(self, y: ElemLike, x: ElemLike) -> Fraction:
        return conditional_probability(y, x)


@dataclass(frozen=True)
class InfoQuantities:
    """Entropies in bits under the uniform input"""
    h_y: float
    h_y_given_x: float
    mutual_info: float
    capacity: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


CHANNEL = ChannelSpec()


def transmit(x: Word, rng: np.random.Generator) -> Word:
    """Send x through the n-th extension of the channel"""
    received = transmit_array(x.to_array()[None, :], rng)[0]
    return Word.from_array(received)


def transmit_array(symbols: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Vectorized transmission of an (N x n) symbol array; one uniform draw per letter"""
    symbols = np.asarray(symbols, dtype=np.uint8)
    draws = rng.integers(0, ALPHABET_SIZE - 1, size=symbols.shape)
    return OTHERS[symbols, draws]


def joint_probability(x: ElemLike, y: ElemLike) -> Fraction:
    """Pr{X=x, Y=y} with uniform input: 0 on the diagonal, 1/12 elsewhere"""
    return marginal_x(x) * conditional_probability(y, x)


def marginal_x(x: ElemLike) -> Fraction:
    parse_elem(x)
    return Fraction(1, ALPHABET_SIZE)


def marginal_y(y: ElemLike) -> Fraction:
    return sum((joint_probability(x, y) for x in range(ALPHABET_SIZE)), Fraction(0))


def conditional_probability(y: ElemLike, x: ElemLike) -> Fraction:
    if parse_elem(y) == parse_elem(x):
        return Fraction(0)
    return Fraction(1, ALPHABET_SIZE - 1)


def extension_probability(y: Word, x: Word) -> Fraction:
    """Q^n(y|x): 3^-n when y differs from x in every coordinate, else 0"""
    if len(y) != len(x):
        raise LengthMismatchError(len(x), len(y))
    result = Fraction(1)
    for y_i, x_i in zip(y, x):
        result *= conditional_probability(y_i, x_i)
        if result == 0:
            break
    return result


def transition_matrix() -> np.ndarray:
    """Q as a 4x4 float array, rows indexed by input"""
    q = np.full((ALPHABET_SIZE, ALPHABET_SIZE), 1.0 / (ALPHABET_SIZE - 1))
    np.fill_diagonal(q, 0.0)
    return q


def mutual_information(p_x: Optional[np.ndarray] = None) -> float:
    """I(X;Y) in bits for input distribution p_x (uniform by default)"""
    p_x = np.full(ALPHABET_SIZE, 1.0 / ALPHABET_SIZE) if p_x is None else np.asarray(p_x, dtype=float)
    if p_x.shape != (ALPHABET_SIZE,) or np.any(p_x < 0) or not math.isclose(p_x.sum(), 1.0, abs_tol=1e-9):
        raise DomainError(f"Not a distribution over {ALPHABET_SIZE} letters: {p_x}")
    q = transition_matrix()
    p_y = p_x @ q
    h_y_given_x = float(sum(p * entropy(row, base=2) for p, row in zip(p_x, q)))
    return float(entropy(p_y, base=2)) - h_y_given_x


def info_quantities() -> InfoQuantities:
    q = transition_matrix()
    p_y = np.array([float(marginal_y(y)) for y in range(ALPHABET_SIZE)])
    h_y = float(entropy(p_y, base=2))
    h_y_given_x = float(entropy(q[0], base=2))
    mutual_info = h_y - h_y_given_x
    # symmetric channel: the uniform input is optimal
    return InfoQuantities(h_y=h_y, h_y_given_x=h_y_given_x, mutual_info=mutual_info, capacity=mutual_info)


def blahut_arimoto_capacity(tol: float = 1e-12, max_iter: int = 1000) -> Tuple[float, np.ndarray]:
    """Capacity in bits and the optimizing input distribution, by Blahut-Arimoto iteration"""
    p_y_x = transition_matrix()
    m = p_y_x.shape[0]
    r = np.ones((1, m)) / m
    q = r.T * p_y_x
    for iteration in range(int(max_iter)):
        q = r.T * p_y_x
        q = q / (np.sum(q, axis=0) + 1e-16)
        r1 = np.array([np.prod(np.power(q, p_y_x), axis=1)])
        r1 = r1 / np.sum(r1)
        tolerance = np.linalg.norm(r1 - r)
        r = r1
        if tolerance < tol:
            logger.debug("Blahut-Arimoto converged after %d iterations", iteration + 1)
            break

    r = r.flatten()
    capacity = 0.0
    for i in range(m):
        if r[i] > 0:
            mask = p_y_x[i, :] > 0
            capacity += np.sum(r[i] * p_y_x[i, mask] * np.log(q[i, mask] / r[i]))
    return float(capacity / np.log(2)), r
