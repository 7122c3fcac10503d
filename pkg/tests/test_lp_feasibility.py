import random

import numpy as np
import pytest

from cappedkc import (
    RadiusGrid,
    build_polytope,
    candidate_radii,
    check_feasible,
    make_instance,
    min_feasible_radius,
)
from cappedkc.core import ceil_inv_alpha
from cappedkc.simplex import phase_one_feasible
from conftest import random_capped_instance


def test_ceil_inv_alpha():
    assert ceil_inv_alpha(0.5) == 2
    assert ceil_inv_alpha(0.3) == 4
    assert ceil_inv_alpha(1 / 3) == 3
    assert ceil_inv_alpha(0.1) == 10
    assert ceil_inv_alpha(1.0) == 1


def test_phase_one_tiny_feasible():
    # x0 + x1 >= 1, x0 <= 0.25  ->  x1 >= 0.75 works
    A = np.array([[1.0, 1.0], [1.0, 0.0]])
    x = phase_one_feasible(A, [">=", "<="], np.array([1.0, 0.25]))
    assert x is not None
    assert x[0] + x[1] >= 1 - 1e-9 and x[0] <= 0.25 + 1e-9


def test_phase_one_tiny_infeasible():
    # x0 >= 2 and x0 <= 1 cannot hold
    A = np.array([[1.0], [1.0]])
    assert phase_one_feasible(A, [">=", "<="], np.array([2.0, 1.0])) is None


def test_radius_prunes_variables():
    inst = make_instance([(0.0,), (1.0,)], ["r", "b"], k=2, alpha=0.5)
    sys = build_polytope(inst, 0.5)
    assert sys.pair_ids == [(0, 0), (1, 1)]
    sys = build_polytope(inst, 1.0)
    assert len(sys.pair_ids) == 4


def test_minload_coefficient_matches_ceiling():
    inst = make_instance([(0.0,), (0.0,)], ["r", "b"], k=1, alpha=0.3)
    sys = build_polytope(inst, 1.0)
    blk = next(b for b in sys.blocks if b.family == "minload")
    assert blk.data.min() == -4.0  # ceil(1/0.3)


def test_coincident_pair_feasible_at_zero():
    inst = make_instance([(0.0,), (0.0,)], ["r", "b"], k=1, alpha=0.5)
    frac = check_feasible(build_polytope(inst, 0.0))
    assert frac is not None
    assert sum(frac.y.values()) <= 1 + 1e-7


@pytest.mark.parametrize("lam", [0.0, 1.0, 7.0])
@pytest.mark.parametrize("k", [1, 2, 4])
def test_three_red_one_blue_always_infeasible(lam, k):
    inst = make_instance([(0.0,)] * 4, ["r", "r", "r", "b"], k=k, alpha=0.5)
    assert check_feasible(build_polytope(inst, lam)) is None


def test_unit_square_feasibility_threshold(unit_square):
    assert check_feasible(build_polytope(unit_square, 0.5)) is None
    frac = check_feasible(build_polytope(unit_square, 1.0))
    assert frac is not None


def test_min_feasible_radius_scan(unit_square):
    got = min_feasible_radius(unit_square, RadiusGrid((0.5, 1.0, 2.0)))
    assert got is not None
    lam, frac = got
    assert lam == 1.0
    assert frac.x


def test_min_feasible_radius_bisect_matches_scan(unit_square):
    grid = candidate_radii(unit_square)
    scan = min_feasible_radius(unit_square, grid, strategy="scan")
    bisect = min_feasible_radius(unit_square, grid, strategy="bisect")
    assert scan is not None and bisect is not None
    assert scan[0] == bisect[0]


def test_min_feasible_radius_empty_when_alpha_too_small():
    inst = make_instance([(0.0,), (1.0,)], ["r", "r"], k=2, alpha=0.4)
    assert min_feasible_radius(inst, candidate_radii(inst)) is None


def test_backends_agree_on_feasibility():
    rng = random.Random(23)
    for _ in range(25):
        inst = random_capped_instance(
            rng,
            n=rng.randint(3, 7),
            n_colors=rng.choice([2, 3]),
            k=rng.randint(1, 3),
            alpha=rng.choice([0.5, 1 / 3]),
        )
        lam = rng.choice(candidate_radii(inst).values)
        sys = build_polytope(inst, lam)
        a = check_feasible(sys, backend="simplex")
        b = check_feasible(sys, backend="highs")
        assert (a is None) == (b is None)


def test_feasibility_monotone_in_radius():
    rng = random.Random(29)
    for _ in range(10):
        inst = random_capped_instance(rng, n=6, n_colors=2, k=2, alpha=0.5)
        verdicts = [
            check_feasible(build_polytope(inst, lam)) is not None
            for lam in candidate_radii(inst)
        ]
        # once feasible, stays feasible
        assert verdicts == sorted(verdicts)


def test_feasible_implies_aggregate_color_bound():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(3, 7)
        colors = [rng.randrange(2) for _ in range(n)]
        inst = make_instance(
            [(rng.random(),) for _ in range(n)], colors, k=2, alpha=rng.choice([0.5, 0.6])
        )
        lam = max(candidate_radii(inst).values)
        if check_feasible(build_polytope(inst, lam)) is not None:
            for c in range(inst.n_colors):
                count = sum(1 for p in inst.points if p.color == c)
                assert count <= inst.alpha * inst.n + 1e-7 * inst.n


def test_returned_points_satisfy_every_row():
    # check_feasible re-validates internally; spot-check x/y shapes and ranges here
    rng = random.Random(57)
    for _ in range(10):
        inst = random_capped_instance(rng, n=6, n_colors=3, k=2, alpha=0.5)
        lam = max(candidate_radii(inst).values)
        frac = check_feasible(build_polytope(inst, lam))
        if frac is None:
            continue
        assert all(0 <= v <= 1 + 1e-7 for v in frac.x.values())
        assert all(0 <= v <= 1 + 1e-7 for v in frac.y.values())
        cover = {}
        for (i, j), v in frac.x.items():
            cover[j] = cover.get(j, 0.0) + v
        for j, total in cover.items():
            assert abs(total - 1.0) <= 1e-6


def test_validate_point_flags_corruption(unit_square):
    from cappedkc.lp_feasibility import _solve_simplex, validate_point

    sys = build_polytope(unit_square, 1.0)
    vec = _solve_simplex(sys)
    assert vec is not None
    assert validate_point(sys, vec) == []
    vec[0] = 2.0  # push an opening variable past its unit bound
    assert validate_point(sys, vec) != []


def test_dump_lp_smoke(unit_square):
    text = build_polytope(unit_square, 1.0).dump_lp()
    assert "Subject To" in text and "colorcap" in text and "Bounds" in text
