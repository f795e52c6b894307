"""Deterministic random streams for experiments.

Every trial gets its own generator derived from (master seed, path), where
the path encodes grid point and trial indices.  Streams are independent of
worker count and execution order, so sweeps reproduce bit for bit no matter
how work is scheduled.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream"]


def stream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the given position in the experiment tree.

    Philox is counter-based, so spawning by key is cheap and collision-free.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))
