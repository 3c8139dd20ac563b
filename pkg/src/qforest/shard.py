"""Odometer sharding, chunked evaluation and the work budget guard.

An assignment of m variables over GF(q) is identified with its odometer
index in [0, q^m), the first variable being the most significant digit.  A
shard is a contiguous block of odometer prefixes, so shards are disjoint,
deterministic and can be recomputed independently.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .linalg import odometer_digits

BUDGET_OPS = 10 ** 10
CHUNK = 1 << 17


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, what: str = "operation"):
        super().__init__(f"{what} needs about {estimate:.3g} field operations "
                         f"(budget {BUDGET_OPS:.0e}); pass force=True to run anyway")
        self.estimate = estimate


def check_budget(estimate: int, force: bool = False, what: str = "operation"):
    if estimate > BUDGET_OPS and not force:
        raise BudgetExceeded(estimate, what)


def prefix_ranges(q: int, m: int, shards: int) -> list[tuple[int, int]]:
    total = q ** m
    shards = max(1, shards)
    t = 0
    while q ** t < shards and t < m:
        t += 1
    prefixes = q ** t
    block = q ** (m - t)
    shards = min(shards, prefixes)
    cuts = [prefixes * i // shards for i in range(shards + 1)]
    out = [(cuts[i] * block, cuts[i + 1] * block) for i in range(shards)]
    assert out[-1][1] == total
    return out


def run_range(kernel, q: int, m: int, lo: int, hi: int):
    """Sum kernel(X) over odometer chunks of [lo, hi).

    Kernels return either an int or a 1-d integer array; sums are kept as
    Python ints so they never overflow.
    """
    acc = None
    for start in range(lo, hi, CHUNK):
        part = kernel(odometer_digits(start, min(hi, start + CHUNK), q, m))
        if isinstance(part, np.ndarray):
            part = [int(x) for x in part]
            acc = part if acc is None else [a + b for a, b in zip(acc, part)]
        else:
            acc = int(part) if acc is None else acc + int(part)
    return acc


def _run(args):
    return run_range(*args)


def default_workers() -> int:
    env = os.environ.get("QFOREST_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sharded_sum(kernel, q: int, m: int, workers: int = 1, shards: int | None = None,
                shard: int | None = None):
    """Evaluate kernel over all q^m assignments, optionally in parallel.

    ``shards`` fixes the partition (defaults to ``workers``); ``shard``
    restricts the run to one block of that partition.  The result never
    depends on either setting beyond which part of the sum is returned.
    """
    shards = shards or workers
    ranges = prefix_ranges(q, m, shards)
    if shard is not None:
        ranges = [ranges[shard]]
    jobs = [(kernel, q, m, lo, hi) for lo, hi in ranges]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run, jobs))
    else:
        parts = [_run(j) for j in jobs]
    parts = [p for p in parts if p is not None]
    if not parts:
        return 0
    if isinstance(parts[0], list):
        return [sum(col) for col in zip(*parts)]
    return sum(parts)
