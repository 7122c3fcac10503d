import random
from functools import lru_cache
from itertools import combinations

from cappedkc import SimpleGraph, has_perfect_matching, max_matching


def brute_max_matching_size(n: int, edges: frozenset) -> int:
    @lru_cache(maxsize=None)
    def best(avail: frozenset) -> int:
        usable = [(u, v) for u, v in edges if u in avail and v in avail]
        if not usable:
            return 0
        out = 0
        for u, v in usable:
            out = max(out, 1 + best(avail - {u, v}))
        return out

    return best(frozenset(range(n)))


def test_triangle():
    g = SimpleGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert len(max_matching(g)) == 1


def test_even_path():
    g = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert len(max_matching(g)) == 2


def petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + inner + spokes)


def test_petersen_perfect():
    g = petersen()
    assert len(max_matching(g)) == 5
    assert has_perfect_matching(g)
    assert brute_max_matching_size(g.n, g.edges) == 5


def test_odd_order_never_perfect():
    g = SimpleGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert not has_perfect_matching(g)


def test_two_disjoint_edges():
    g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    assert has_perfect_matching(g)


def test_star_three_leaves():
    g = SimpleGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert len(max_matching(g)) == 1
    assert not has_perfect_matching(g)


def test_matching_edges_valid():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        g = SimpleGraph.from_edges(n, edges)
        matched = max_matching(g)
        used = [v for e in matched for v in e]
        assert len(used) == len(set(used))
        for u, v in matched:
            assert (min(u, v), max(u, v)) in g.edges


def test_agrees_with_brute_force_200_trials():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 8)
        p = rng.choice([0.15, 0.3, 0.5, 0.8])
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        g = SimpleGraph.from_edges(n, edges)
        assert len(max_matching(g)) == brute_max_matching_size(n, g.edges)
