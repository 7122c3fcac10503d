import random

import pytest

from cappedkc import (
    Caplet,
    InfeasibleInstance,
    InputError,
    caplet_decompose,
    check_capped,
    make_instance,
    non_dominant_k_center,
    solution_cost,
    threshold_graph,
)
from cappedkc.halfcap import connected_components
from conftest import random_capped_instance


def test_threshold_zero_distinct_points():
    inst = make_instance([(0.0,), (1.0,)], ["r", "b"], k=1, alpha=0.5)
    assert threshold_graph(inst, 0.0).edges == frozenset()


def test_threshold_same_color_never_joined():
    inst = make_instance([(0.0,), (0.0,)], ["r", "r"], k=1, alpha=0.5)
    assert threshold_graph(inst, 1.0).edges == frozenset()


def test_threshold_boundary_inclusive():
    inst = make_instance([(0.0,), (1.0,)], ["r", "b"], k=1, alpha=0.5)
    assert threshold_graph(inst, 1.0).edges == frozenset({(0, 1)})


def test_components():
    inst = make_instance([(0.0,), (0.5,), (9.0,)], ["r", "b", "g"], k=1, alpha=0.5)
    g = threshold_graph(inst, 1.0)
    assert connected_components(g) == [[0, 1], [2]]


def test_caplet_size_validation():
    with pytest.raises(InputError):
        Caplet((1,))
    with pytest.raises(InputError):
        Caplet((1, 2, 3, 4))


def test_decompose_edge_pair():
    dec = caplet_decompose([4, 9], {4: 0, 9: 1}, [(4, 9)])
    assert dec is not None
    assert dec.caplets == (Caplet((4, 9)),)


def test_decompose_two_colors_odd_fails():
    dec = caplet_decompose([0, 1, 2], {0: 0, 1: 0, 2: 1}, [(0, 2), (1, 2)])
    assert dec is None


def test_decompose_triangle():
    edges = [(0, 1), (0, 2), (1, 2)]
    dec = caplet_decompose([0, 1, 2], {0: 0, 1: 1, 2: 2}, edges)
    assert dec is not None
    assert dec.caplets == (Caplet((0, 1, 2)),)


def test_decompose_singleton_none():
    assert caplet_decompose([3], {3: 0}, []) is None


def test_unit_square_pairs(unit_square):
    sol, info = non_dominant_k_center(unit_square, return_info=True)
    assert solution_cost(unit_square, sol) == 1.0
    assert info["lambda"] == 1.0
    assert check_capped(unit_square, sol)
    clusters = sorted(tuple(m) for m in sol.clusters().values())
    assert clusters == [(0, 2), (1, 3)] or clusters == [(0, 3), (1, 2)]


def test_coincident_balanced_pairs_zero_cost():
    inst = make_instance(
        [(0.0,), (0.0,), (3.0,), (3.0,)], ["r", "b", "r", "b"], k=2, alpha=0.5
    )
    sol = non_dominant_k_center(inst)
    assert solution_cost(inst, sol) == 0.0
    assert check_capped(inst, sol)


def test_three_red_one_blue_infeasible():
    inst = make_instance([(0.0,)] * 4, ["r", "r", "r", "b"], k=2, alpha=0.5)
    with pytest.raises(InfeasibleInstance):
        non_dominant_k_center(inst)


def test_wrong_alpha_rejected():
    inst = make_instance([(0.0,), (0.0,)], ["r", "b"], k=1, alpha=0.4)
    with pytest.raises(InputError):
        non_dominant_k_center(inst)


def test_random_instances_exact_caps_and_structure():
    rng = random.Random(555)
    solved = 0
    for _ in range(30):
        n = rng.choice([4, 6, 8])
        inst = random_capped_instance(
            rng, n=n, n_colors=rng.choice([2, 3]), k=rng.randint(1, 3), alpha=0.5
        )
        try:
            sol, info = non_dominant_k_center(inst, return_info=True)
        except InfeasibleInstance:
            continue
        solved += 1
        # caps hold exactly, clusters never have a majority color
        assert check_capped(inst, sol)
        lam = info["lambda"]
        # caplet members stay together and stay close
        for cap in info["caplets"]:
            members = list(cap.members)
            anchors = {sol.assign[j] for j in members}
            assert len(anchors) == 1
            for a in members:
                for b in members:
                    assert inst.dist(a, b) <= 10 * lam + 1e-9
        # accepted radius gives the 12x envelope
        assert solution_cost(inst, sol) <= 12 * lam + 1e-9
        assert len(sol.centers) <= inst.k
    assert solved >= 10
