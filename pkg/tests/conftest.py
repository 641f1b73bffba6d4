import math

import numpy as np
import pytest

from ctqw_search import MarkedState, hypercube, laplacian, laplacian_decomposition


@pytest.fixture(scope="session")
def dense_hypercube():
    """Cached dense decompositions of hypercube Laplacians, keyed by bit count."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = laplacian_decomposition(laplacian(hypercube(n)))
        return cache[n]

    return get


def random_marked_state(rng, n, p_n=None, support=None):
    """Random real marked state; optionally pin the uniform overlap or support size."""
    if support is not None:
        support = min(support, n)
        verts = rng.choice(n, size=support, replace=False)
        weights = np.zeros(n)
        weights[verts] = rng.standard_normal(support)
        while np.linalg.norm(weights) < 1e-9 or abs(weights.sum()) < 1e-9:
            weights[verts] = rng.standard_normal(support)
        return MarkedState.from_weights(weights)
    s = np.full(n, 1.0 / math.sqrt(n))
    g = rng.standard_normal(n)
    g -= (s @ g) * s
    g /= np.linalg.norm(g)
    c = rng.uniform(1.0 / math.sqrt(n), 1.0) if p_n is None else p_n
    return MarkedState(math.sqrt(1.0 - c * c) * g + c * s)
