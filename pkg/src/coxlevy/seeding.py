"""Counter-based random streams keyed by (master seed, stream index).

Each stream is a Philox generator seeded from SeedSequence(seed, spawn_key=key),
so the stream for a given key does not depend on which other streams exist
or on the order in which they are consumed.
"""

from __future__ import annotations

import numpy as np

SEED_BITS = 64


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2 ** SEED_BITS:
        raise ValueError(f"seed must be an unsigned {SEED_BITS}-bit integer, got {seed}")
    return seed


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for stream ``key`` under master ``seed``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def block_sizes(n: int, block: int) -> list[int]:
    """Split ``n`` draws into fixed-size blocks (last one possibly shorter)."""
    if n < 0 or block < 1:
        raise ValueError(f"need n >= 0 and block >= 1, got n={n}, block={block}")
    full, rest = divmod(n, block)
    return [block] * full + ([rest] if rest else [])
