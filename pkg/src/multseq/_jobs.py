"""Deterministic fan-out over independent work items."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def effective_jobs(jobs: int) -> int:
    if jobs <= 1:
        return 1
    return min(jobs, os.cpu_count() or 1)


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], jobs: int = 1
) -> list[R]:
    """Map fn over items in order.

    With jobs > 1 the items run in worker processes; results come back
    in input order and match the serial path exactly.  fn and the items
    must be picklable.  Worker processes rebuild their own basis caches,
    so fanning out only pays off when each item does real work.
    """
    work: Sequence[T] = list(items)
    usable = effective_jobs(jobs)
    if usable <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with ProcessPoolExecutor(max_workers=min(usable, len(work))) as pool:
        return list(pool.map(fn, work))
