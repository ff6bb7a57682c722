"""
Sample points for residual checks.
"""
import os

import numpy as np

SEED_ENV_VARIABLE = "CMKDV_SEED"
RESIDUAL_POINTS = 100
RESIDUAL_HALF_WIDTH = 10.0
SINGULAR_EXCLUSION = 1e-3


def seed_from_env(default: int = 0) -> int:
    """Seed for randomized sample points, read from ``CMKDV_SEED``."""
    value = os.environ.get(SEED_ENV_VARIABLE)
    if value is None or value.strip() == "":
        return default
    return int(value)


def make_rng(seed: int | None = None) -> np.random.Generator:
    """Random generator seeded explicitly or from the environment."""
    return np.random.default_rng(seed_from_env() if seed is None else seed)


def residual_nodes(
    n: int = RESIDUAL_POINTS,
    half_width: float = RESIDUAL_HALF_WIDTH,
    exclusion: float = SINGULAR_EXCLUSION,
    center: float = 0.0,
) -> np.ndarray:
    """
    Chebyshev nodes on ``[center - half_width, center + half_width]`` clustered towards the ends,
    dropping nodes closer than ``exclusion`` to ``center``.
    """
    j = np.arange(n)
    nodes = center + half_width * np.cos(np.pi * (j + 0.5) / n)
    nodes = nodes[np.abs(nodes - center) >= exclusion]
    return np.sort(nodes)
