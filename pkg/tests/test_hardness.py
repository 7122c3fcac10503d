import pytest

from cappedkc import (
    BipartiteSeed,
    InputError,
    capped_cost_at_most,
    hardness_instance,
    min_capped_cost_unbounded,
    t_star_decomposition_exists,
)
from cappedkc.hardness import capped_partition_exists_bruteforce


def seed_21(edges, t=0):
    return BipartiteSeed(2, 1, tuple(edges), t)


def test_star_counts_three_three():
    from cappedkc.hardness import _star_counts

    assert _star_counts(BipartiteSeed(3, 3, ())) == (1, 1)
    assert _star_counts(BipartiteSeed(2, 1, ())) == (1, 0)
    assert _star_counts(BipartiteSeed(1, 0, ())) is None
    inst = hardness_instance(BipartiteSeed(3, 3, ((0, 0), (1, 0), (2, 1)), 0))
    # solvable system: four layers of total size 4*(n1+n2)
    assert inst.n == 24


def test_unsolvable_system_gives_trivial_instance():
    inst = hardness_instance(BipartiteSeed(1, 0, (), 0))
    assert inst.n == 1
    assert inst.color_labels[inst.points[0].color] == "red"
    assert min_capped_cost_unbounded(inst) == float("inf")


def test_gadget_layer_sizes():
    inst = hardness_instance(seed_21([(0, 0), (1, 0)], t=0))
    assert inst.n == 12
    reds = sum(1 for p in inst.points if inst.color_labels[p.color] == "red")
    assert reds == 6
    inst1 = hardness_instance(seed_21([(0, 0), (1, 0)], t=1))
    assert inst1.n == 18
    extra = sum(1 for p in inst1.points if inst1.color_labels[p.color] == "c1")
    assert extra == 6


def test_star_decomposition_size_two_is_matching():
    assert t_star_decomposition_exists(BipartiteSeed(1, 1, ((0, 0),)), 2)
    assert not t_star_decomposition_exists(BipartiteSeed(1, 1, ()), 2)
    assert t_star_decomposition_exists(BipartiteSeed(2, 2, ((0, 0), (1, 1))), 2)


def test_star_decomposition_path_of_three():
    path = BipartiteSeed(1, 2, ((0, 0), (0, 1)))
    assert t_star_decomposition_exists(path, 3)
    assert not t_star_decomposition_exists(BipartiteSeed(1, 2, ((0, 0),)), 3)


def test_star_decomposition_guard():
    with pytest.raises(InputError):
        t_star_decomposition_exists(BipartiteSeed(9, 9, ()), 3)


def test_full_star_seed_costs_one():
    seed = seed_21([(0, 0), (1, 0)], t=0)
    assert t_star_decomposition_exists(seed, 3)
    inst = hardness_instance(seed)
    assert capped_cost_at_most(inst, 1)
    assert min_capped_cost_unbounded(inst) == 1.0


def test_single_edge_seed_cost_is_exactly_two():
    # a non-decomposable seed whose gadget still packs into balanced radius-2
    # clusters: only cost >= 2 is guaranteed for no-instances, never cost > 2
    seed = seed_21([(0, 0)], t=0)
    assert not t_star_decomposition_exists(seed, 3)
    inst = hardness_instance(seed)
    assert not capped_cost_at_most(inst, 1)
    assert min_capped_cost_unbounded(inst) == 2.0


def test_full_star_seed_with_extra_color_costs_one():
    seed = seed_21([(0, 0), (1, 0)], t=1)
    inst = hardness_instance(seed)
    assert inst.alpha == pytest.approx(1 / 3)
    assert capped_cost_at_most(inst, 1)


def test_single_edge_seed_with_extra_color_stays_hard():
    seed = seed_21([(0, 0)], t=1)
    inst = hardness_instance(seed)
    assert min_capped_cost_unbounded(inst) >= 2.0


def test_milp_oracle_agrees_with_exhaustive_search():
    for edges in ([(0, 0), (1, 0)], [(0, 0)], []):
        inst = hardness_instance(seed_21(edges, t=0))
        for radius in (1.0, 2.0):
            assert capped_cost_at_most(inst, radius) == capped_partition_exists_bruteforce(
                inst, radius
            )


def test_mirrored_seed_costs_one():
    seed = BipartiteSeed(1, 2, ((0, 0), (0, 1)), 0)
    assert t_star_decomposition_exists(seed, 3)
    inst = hardness_instance(seed)
    assert inst.n == 12
    assert capped_cost_at_most(inst, 1)
