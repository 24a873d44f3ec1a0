"""Block-wise sampling on keyed random streams, optionally in worker processes.

A task is (sampler, seed, key, size) and its result depends only on those
values, so any worker count and any execution order give the same output.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..seeding import block_sizes, check_seed, stream

BLOCK = 25_000


def seed_of(rng) -> int:
    """Master seed from an int or from one draw of a Generator."""
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2 ** 63, dtype=np.int64))
    return check_seed(rng)


def _run(task):
    sampler, seed, key, size = task
    return sampler(stream(seed, *key), size)


def run_tasks(tasks, workers: int = 1) -> list:
    """Results of ``tasks`` in task order."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1 or len(tasks) == 1:
        return [_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, tasks))


def block_tasks(sampler, n: int, seed: int, prefix: tuple, block: int = BLOCK) -> list:
    return [(sampler, seed, (*prefix, b), size) for b, size in enumerate(block_sizes(n, block))]


def sample_blocks(sampler, n: int, seed: int, prefix: tuple = (), workers: int = 1,
                  block: int = BLOCK) -> np.ndarray:
    """``n`` draws of ``sampler(rng, size)`` concatenated over fixed-size blocks."""
    parts = run_tasks(block_tasks(sampler, n, seed, prefix, block), workers)
    return np.concatenate(parts, axis=0)
