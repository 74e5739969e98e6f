"""Shared fixtures: the small benchmark distributions used across tests."""

import numpy as np
import pytest

from cohesionlab.dist import JointDistribution


@pytest.fixture
def redundant3():
    """Three binary variables, perfectly redundant (two equal-mass atoms)."""
    return JointDistribution(3, 2, {(0, 0, 0): 0.5, (1, 1, 1): 0.5})


@pytest.fixture
def parity3():
    """Three binary variables, even parity, uniform on four atoms."""
    return JointDistribution(
        3, 2, {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 1): 0.25, (1, 1, 0): 0.25}
    )


@pytest.fixture
def redundant_synergy4():
    """Four binary variables: the 5-bit peak of the second-order measure."""
    return JointDistribution(
        4, 2, {(0, 0, 0, 0): 0.25, (0, 1, 1, 0): 0.25, (1, 0, 1, 1): 0.25, (1, 1, 0, 1): 0.25}
    )


# The 16 quaternary atoms of the second-order maximizer over GF(4),
# transcribed with the z -> 2, z+1 -> 3 labeling.
RS4_ATOMS = [
    (0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2),
    (1, 1, 1, 1), (1, 0, 3, 2), (1, 3, 2, 0), (1, 2, 0, 3),
    (2, 2, 2, 2), (2, 3, 0, 1), (2, 0, 1, 3), (2, 1, 3, 0),
    (3, 3, 3, 3), (3, 2, 1, 0), (3, 1, 0, 2), (3, 0, 2, 1),
]


@pytest.fixture
def rs_maximizer4():
    return JointDistribution(4, 4, {a: 1.0 / 16 for a in RS4_ATOMS})


@pytest.fixture
def local_div_max4():
    """Binary local maximizer of the order-2 divergence found by grid search."""
    return JointDistribution(
        4, 2,
        {
            (0, 0, 0, 0): 1 / 4,
            (0, 1, 1, 1): 1 / 4,
            (1, 0, 1, 1): 1 / 6,
            (1, 1, 0, 1): 1 / 6,
            (1, 1, 1, 0): 1 / 6,
        },
    )


def random_distribution(rng: np.random.Generator, n: int, q: int) -> JointDistribution:
    vec = rng.dirichlet(np.ones(q**n))
    atoms = {}
    ix = 0
    for outcome in np.ndindex(*(q,) * n):
        atoms[tuple(int(s) for s in outcome)] = float(vec[ix])
        ix += 1
    return JointDistribution(n, q, atoms)
