#!/usr/bin/env python3
"""Built-in catalog of best-known quaternary linear codes for the channel"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Any, List, Optional, Tuple
import re

from config import DEFAULT_CODEWORD_BUDGET
from errors import CodeConstructionError, ParseError
from codes import LinearCode, WeightDistribution, parse_code_text, quasi_cyclic_from_first_row, shorten

QUASI_CYCLIC_FIRST_ROW = "10000 10120 11020 11230 12220 13130 13210 11312"


@dataclass(frozen=True)
class CodeCatalogEntry:
    """One catalog code: parameters, published values and, when known, a generator"""
    name: str
    n: int
    k: int
    d: int
    source: str
    published_bound: Optional[float] = None
    published_weight_bound: Optional[float] = None
    stored_weights: Optional[Tuple[Tuple[int, int], ...]] = None
    first_row: Optional[str] = None
    shortened_from: Optional[str] = None
    code_text: Optional[str] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return 4 ** self.k

    @property
    def rate(self) -> float:
        """Key bits per letter, log2(M)/n"""
        return 2 * self.k / self.n

    @property
    def has_generator(self) -> bool:
        return bool(self.first_row or self.shortened_from or self.code_text)

    def build(self) -> LinearCode:
        return _build(self.name)

    def weights(self, limit: int = DEFAULT_CODEWORD_BUDGET) -> Optional[WeightDistribution]:
        """Stored weight distribution, or one derived by enumerating the generator"""
        if self.stored_weights is not None:
            return WeightDistribution.from_mapping(self.n, dict(self.stored_weights))
        if self.has_generator:
            return self.build().weight_distribution(limit)
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "M": self.size,
            "rate": self.rate,
            "source": self.source,
            "published_bound": self.published_bound,
            "has_generator": self.has_generator,
        }


def _table_row(n: int, k: int, d: int, bound: float, **extra) -> CodeCatalogEntry:
    return CodeCatalogEntry(name=f"[{n},{k},{d}]", n=n, k=k, d=d, source="table1", published_bound=bound, **extra)


_TABLE1 = (
    # length 100, consecutive dimensions
    _table_row(100, 10, 62, 6.337e-6),
    _table_row(100, 11, 60, 5.704e-5),
    _table_row(100, 12, 58, 5.133e-4),
    _table_row(100, 13, 56, 4.620e-3),
    _table_row(100, 14, 55, 0.02772),
    _table_row(100, 15, 52, 0.3742),
    # long codes
    _table_row(200, 20, 109, 3.517e-8),
    _table_row(250, 25, 136, 6.340e-10),
    # lengths 50 down to 10
    _table_row(50, 5, 35, 3.516e-4),
    _table_row(50, 6, 33, 3.165e-3),
    _table_row(48, 6, 32, 4.747e-3),
    _table_row(48, 5, 33, 7.912e-4),
    _table_row(47, 6, 31, 7.120e-3),
    _table_row(46, 5, 32, 1.187e-3),
    _table_row(45, 5, 31, 1.780e-3),
    _table_row(43, 5, 30, 2.670e-3),
    _table_row(42, 5, 29, 4.005e-3),
    _table_row(41, 5, 28, 6.008e-3),
    _table_row(40, 4, 28, 1.502e-3),
    _table_row(30, 3, 22, 4.277e-3),
    _table_row(20, 2, 16, 0.01218),
    _table_row(
        10, 1, 10, 0.02601,
        code_text="10 1\n1111111111\n",
        notes=("repetition code; unique [10,1,10] code up to monomial equivalence",),
    ),
)

_EXAMPLE1 = (
    CodeCatalogEntry(
        name="[28,4,20]", n=28, k=4, d=20, source="example1",
        published_bound=0.03849, published_weight_bound=0.03038,
        stored_weights=((20, 189), (24, 63), (28, 3)),
        notes=("weight distribution only; no generator published",),
    ),
    CodeCatalogEntry(
        name="[31,4,22]", n=31, k=4, d=22, source="example1",
        published_bound=0.01711, published_weight_bound=0.01216,
        stored_weights=((22, 141), (24, 87), (28, 24), (30, 3)),
        notes=("weight distribution only; no generator published",),
    ),
    CodeCatalogEntry(
        name="[40,5,28]", n=40, k=5, d=28, source="example1",
        published_bound=0.006008, first_row=QUASI_CYCLIC_FIRST_ROW,
        notes=("quasi-cyclic, eight 5x5 circulant blocks",),
    ),
    CodeCatalogEntry(
        name="[39,4,28]", n=39, k=4, d=28, source="example1",
        published_bound=0.001502, shortened_from="[40,5,28]",
        notes=("shortened at position 0",),
    ),
)


def catalog() -> List[CodeCatalogEntry]:
    """Published table rows followed by the four worked-example codes"""
    return list(_TABLE1 + _EXAMPLE1)


_NAME_PATTERN = re.compile(r"^\[?\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]?$")


def lookup(name: str) -> CodeCatalogEntry:
    """Find an entry by "[n,k,d]" (brackets and spaces optional)"""
    match = _NAME_PATTERN.match(name.strip())
    if not match:
        raise ParseError(f"Catalog names look like [n,k,d], got {name!r}")
    key = "[{},{},{}]".format(*match.groups())
    for entry in catalog():
        if entry.name == key:
            return entry
    raise ParseError(f"No catalog entry {key}")


@lru_cache(maxsize=None)
def _build(name: str) -> LinearCode:
    entry = lookup(name)
    if entry.first_row:
        return quasi_cyclic_from_first_row(entry.first_row, name=entry.name)
    if entry.shortened_from:
        return shorten(_build(entry.shortened_from), 0, name=entry.name)
    if entry.code_text:
        return parse_code_text(entry.code_text, name=entry.name)
    raise CodeConstructionError(f"{entry.name} is a parameters-only entry; no generator is known")
