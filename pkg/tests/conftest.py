import numpy as np
import pytest

from optsep import Dataset, gen_eq2, gen_random_separable


@pytest.fixture
def tiny():
    """Single positive point at 1 on the line."""
    return Dataset([([1.0], 1)])


@pytest.fixture
def eq2_2():
    """Two-point chain dataset: ((1,0),+1), ((1,-1),-1); radius sqrt(2)."""
    return gen_eq2(2)


@pytest.fixture
def random_case():
    """Factory for small separable datasets with a known margin floor.

    Returns (dataset, margin_target); sizes follow the verification batch
    (n <= 16, d <= 8, floors in [0.05, 0.5]).
    """

    def make(seed: int, max_n: int = 16, max_d: int = 8):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, max_n + 1))
        d = int(rng.integers(1, max_d + 1))
        target = float(rng.uniform(0.05, 0.5))
        dataset = gen_random_separable(n, d, target, seed=int(rng.integers(0, 2**62)))
        return dataset, target

    return make
