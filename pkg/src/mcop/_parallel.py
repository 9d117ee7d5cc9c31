"""Order-preserving map honoring the ``MCOP_THREADS`` cap."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("MCOP_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
