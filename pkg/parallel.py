#!/usr/bin/env python3
"""Thread pool for data-parallel enumeration and simulation chunks"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar
import logging

import psutil
from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    """One worker per logical CPU"""
    return psutil.cpu_count(logical=True) or 1


def resolve_threads(threads: Optional[int]) -> int:
    """0 or None selects default_threads()"""
    if not threads:
        return default_threads()
    if threads < 0:
        raise ValueError(f"threads must be >= 0, got {threads}")
    return threads


class ChunkRunner:
    """Executor wrapper whose map keeps input order, so reductions stay deterministic"""

    def __init__(self, threads: Optional[int] = None, progress: bool = False):
        self.threads = resolve_threads(threads)
        self.progress = progress
        self.executor = ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 else None
        logger.debug("ChunkRunner with %d worker(s)", self.threads)

    def map(self, fn: Callable[[T], R], items: Iterable[T], description: Optional[str] = None,
            total: Optional[int] = None) -> List[R]:
        """Apply fn to every item; results come back in input order"""
        results = map(fn, items) if self.executor is None else self.executor.map(fn, items)
        if self.progress:
            results = tqdm(results, total=total, desc=description, unit="chunk", leave=False)
        return list(results)

    def shutdown(self):
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.shutdown()
