"""Reproducible per-trajectory random streams.

Streams are counter-based (Philox) and keyed by (base seed, trajectory
index), so ensemble members can run in any order, on any number of
workers, and still replay bit-identically.
"""

import numpy as np


def trajectory_generator(base_seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for trajectory ``index`` of ensemble ``base_seed``."""
    if base_seed < 0 or index < 0:
        raise ValueError("seed and trajectory index must be non-negative")
    key = np.array([base_seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
