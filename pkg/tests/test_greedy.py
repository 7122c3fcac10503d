import random

import pytest

from cappedkc import (
    GreedyConfig,
    InputError,
    greedy_k_center,
    lloyd_kcenter_round,
    make_instance,
    nearest_assignment,
    random_baseline,
    solution_cost,
)
from conftest import line_instance


def test_greedy_line_k2():
    inst = line_instance([0, 1, 10, 11], k=2)
    sol, cost = greedy_k_center(inst)
    assert sol.centers == (0, 3)
    assert cost == 1.0


def test_greedy_line_k1():
    inst = line_instance([0, 1, 10, 11], k=1)
    _, cost = greedy_k_center(inst)
    assert cost == 11.0


def test_greedy_k_at_least_n():
    inst = line_instance([0, 1, 2], k=7)
    sol, cost = greedy_k_center(inst)
    assert len(sol.centers) == 3
    assert cost == 0.0


def test_greedy_duplicate_points_center_count():
    inst = line_instance([0, 0, 0, 5], k=3)
    sol, _ = greedy_k_center(inst)
    assert len(sol.centers) == 3


def test_greedy_deterministic_seeded_rule():
    rng = random.Random(5)
    inst = make_instance(
        [(rng.random(), rng.random()) for _ in range(12)], [0] * 12, k=3, alpha=1.0
    )
    cfg = GreedyConfig(first_center_rule="seeded", seed=42)
    a, ca = greedy_k_center(inst, cfg)
    b, cb = greedy_k_center(inst, cfg)
    assert a.centers == b.centers and ca == cb


def test_greedy_centers_spread_beyond_cost():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(6, 14)
        inst = make_instance(
            [(rng.random(), rng.random()) for _ in range(n)], [0] * n, k=3, alpha=1.0
        )
        sol, cost = greedy_k_center(inst)
        centers = list(sol.centers)
        for a in range(len(centers)):
            for b in range(a + 1, len(centers)):
                assert inst.dist(centers[a], centers[b]) >= cost - 1e-9


def test_lloyd_moves_line_center():
    inst = line_instance([0, 1, 2], k=1)
    sol = nearest_assignment(inst, [0])
    out = lloyd_kcenter_round(inst, sol)
    assert out.centers == (1,)
    assert solution_cost(inst, out) == 1.0


def test_lloyd_fixed_point():
    inst = line_instance([0, 1, 10, 11], k=2)
    sol = nearest_assignment(inst, [0, 3])
    out = lloyd_kcenter_round(inst, sol)
    # centers {0,11} are already discrete 1-centers of their clusters up to ties
    assert solution_cost(inst, out) == solution_cost(inst, sol)


def test_lloyd_singletons_unchanged():
    inst = line_instance([0, 5, 9], k=3)
    sol = nearest_assignment(inst, [0, 1, 2])
    out = lloyd_kcenter_round(inst, sol)
    assert out.centers == sol.centers


def test_lloyd_never_increases_cost():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(4, 12)
        inst = make_instance(
            [(rng.random(), rng.random()) for _ in range(n)], [0] * n, k=3, alpha=1.0
        )
        centers = rng.sample(range(n), min(3, n))
        sol = nearest_assignment(inst, centers)
        before = solution_cost(inst, sol)
        after = solution_cost(inst, lloyd_kcenter_round(inst, sol))
        assert after <= before + 1e-12


def test_random_baseline_deterministic():
    inst = line_instance([0, 1, 2, 3, 4], k=2)
    a = random_baseline(inst, 123)
    b = random_baseline(inst, 123)
    assert a.centers == b.centers and a.assign == b.assign


def test_random_baseline_full_k():
    inst = line_instance([0, 1, 2], k=3)
    sol = random_baseline(inst, 0)
    assert solution_cost(inst, sol) == 0.0


def test_random_baseline_k_too_large():
    inst = line_instance([0, 1], k=2)
    with pytest.raises(InputError):
        random_baseline(inst.with_params(k=3), 0)
