"""Shared fixtures: JIT warmup and small deterministic instances."""

import numpy as np
import pytest

from edmcomplete import PointCloud, symmetric_eig


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    """Trigger the jitted eigensolver once so timed tests measure warm runs."""
    symmetric_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))


def random_cloud(seed, order=8, dim=3):
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.0, 1.0, size=(order, dim))
    return PointCloud(coords, ("C",) * order, tuple(range(order)))
