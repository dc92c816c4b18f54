"""Deterministic derivation of independent RNG streams from a master seed.

Every random decision in the sampler is drawn from a stream addressed by a
small integer key path, e.g. (side, vertex, sweep).  Streams with distinct
paths are statistically independent and reproducible, which is what makes
block updates order-independent and the message-passing simulation
bit-identical to the sequential run.
"""

from __future__ import annotations

import numpy as np

# Key-path roles for the first component after the seed.
SIDE_X = 0
SIDE_Y = 1
INIT = 2
CHAIN = 3


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return an independent generator for the given (seed, *path) address.

    The same address always yields the same stream; distinct addresses give
    independent streams.  Path components must be non-negative integers.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse (seed, *path) into a plain integer usable as a new master seed."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    words = ss.generate_state(4, np.uint32)
    out = 0
    for w in words:
        out = (out << 32) | int(w)
    return out
