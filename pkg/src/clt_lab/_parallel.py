"""Order-preserving thread map capped by the CLT_LAB_THREADS environment variable."""

import os
from concurrent.futures import ThreadPoolExecutor


def max_workers() -> int:
    raw = os.environ.get("CLT_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def pmap(fn, items):
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
