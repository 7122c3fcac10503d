import random

import pytest

from cappedkc import Instance, make_instance


def random_capped_instance(
    rng: random.Random,
    n: int,
    n_colors: int,
    k: int,
    alpha: float,
    dim: int = 2,
) -> Instance:
    """Random instance with near-balanced color counts (the feasible-friendly regime)."""
    base, rem = divmod(n, n_colors)
    colors = []
    for c in range(n_colors):
        colors += [c] * (base + (1 if c < rem else 0))
    rng.shuffle(colors)
    coords = [tuple(rng.random() for _ in range(dim)) for _ in range(n)]
    return make_instance(coords, colors, k=k, alpha=alpha)


def line_instance(xs, colors=None, k=1, alpha=1.0) -> Instance:
    coords = [(float(x),) for x in xs]
    if colors is None:
        colors = [0] * len(xs)
    return make_instance(coords, colors, k=k, alpha=alpha)


@pytest.fixture
def unit_square() -> Instance:
    """Two reds on one diagonal, two blues on the other; the classic 2+2 case."""
    coords = [(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)]
    return make_instance(coords, ["r", "r", "b", "b"], k=2, alpha=0.5)
