# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

import os
import logging
from concurrent.futures import ThreadPoolExecutor
import numpy as np

THREADS_ENV = 'FRINGECAL_THREADS'


def worker_count(threads=None) -> int:
    """
    Number of worker threads: the requested count (CPU count when None), capped by
    the FRINGECAL_THREADS environment variable.
    """
    n = threads if threads is not None else (os.cpu_count() or 1)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            cap = int(env)
        except ValueError:
            logging.warning(f"{THREADS_ENV}={env!r} is not an integer and is ignored")
        else:
            if cap >= 1:
                n = min(n, cap)
            else:
                logging.warning(f"{THREADS_ENV} should be at least 1, got {cap}; ignored")
    return max(1, int(n))


def row_blocks(height: int, n_blocks: int):
    """Split rows [0, height) into n_blocks contiguous non-empty slices."""
    n_blocks = max(1, min(n_blocks, height))
    edges = np.linspace(0, height, n_blocks + 1).round().astype(int)
    return [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def parallel_rows(func, height: int, threads=None):
    """
    Parallel-for over row blocks. func(rows: slice) returns an array (or a tuple of
    arrays) whose first axis spans those rows; block results are concatenated in order.
    """
    blocks = row_blocks(height, worker_count(threads))
    if len(blocks) == 1:
        return func(blocks[0])

    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        parts = list(pool.map(func, blocks))

    if isinstance(parts[0], tuple):
        return tuple(np.concatenate(group, axis=0) for group in zip(*parts))
    return np.concatenate(parts, axis=0)


def parallel_map(func, items, threads=None) -> list:
    """Ordered parallel map."""
    items = list(items)
    n = min(worker_count(threads), max(1, len(items)))
    if n == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))
