"""Deterministic per-index fan-out.

Work is split into contiguous index blocks, each block is evaluated by one
task, and the blocks are concatenated in index order.  Every output element
is written by exactly one task, so the result does not depend on the
number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return 1
    if workers < 0:
        raise ValueError(f"workers must be >= 0, got {workers}")
    if workers == 0:
        return os.cpu_count() or 1
    return workers


def map_blocks(fn, n: int, workers: int | None = 1) -> np.ndarray:
    """Evaluate ``fn(indices)`` over ``range(n)`` in ordered blocks."""
    workers = resolve_workers(workers)
    idx = np.arange(n)
    if workers == 1 or n < 2:
        return np.asarray(fn(idx))
    blocks = [b for b in np.array_split(idx, min(workers, n)) if b.size]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(fn, blocks))
    return np.concatenate(parts)
