import numpy as np
import pytest

from gridslope import (ExactCost, OracleError, cost_to_come_field, cost_to_go_field,
                       export_dataset, expand, ground_truth_rating, optimal_cost,
                       optimal_region, region_distances, region_mask)
from gridslope.oracle import RatingGrid
from gridslope.worlds import WorldSpec, generate

from bruteforce import bf_cost_field, enumerate_simple_paths, optimal_path_cells
from conftest import grid_from_art


def wall_map():
    # column x=1 blocked except its top cell
    return grid_from_art(
        """
        ..G
        .@.
        S@.
        """
    )


class TestCostFields:
    def test_empty3x3_cost_to_go(self, empty3x3):
        h = cost_to_go_field(empty3x3)
        assert h.cost(0, 0) == ExactCost(0, 2)  # 2*sqrt(2) on the diagonal
        assert h.cost(2, 2) == ExactCost(0, 0)

    def test_wall_map_matches_enumeration(self):
        grid = wall_map()
        paths = enumerate_simple_paths(grid, grid.start, grid.goal)
        assert paths
        best = min(cost for _, cost in paths)
        h = cost_to_go_field(grid)
        assert h.cost(*grid.start) == best
        # with corner moves permitted the best route is 2 cardinals + 1 diagonal
        assert best == ExactCost(2, 1)

    def test_empty3x3_cost_to_come(self, empty3x3):
        g = cost_to_come_field(empty3x3)
        assert g.cost(*empty3x3.start) == ExactCost(0, 0)
        assert g.cost(2, 1) == ExactCost(1, 1)  # 1 + sqrt(2)

    def test_symmetry_on_undirected_grid(self, empty3x3):
        import gridslope

        g = cost_to_come_field(empty3x3)
        swapped = gridslope.GridMap(empty3x3.free_mask, empty3x3.goal, empty3x3.start)
        h_swapped = cost_to_go_field(swapped)  # goal placed at the old start
        assert (g.cardinal == h_swapped.cardinal).all()
        assert (g.diagonal == h_swapped.diagonal).all()

    def test_isolated_goal_raises(self):
        grid = grid_from_art(
            """
            .@G
            .@@
            S..
            """
        )
        with pytest.raises(OracleError):
            cost_to_go_field(grid)
        with pytest.raises(OracleError):
            cost_to_come_field(grid)

    def test_bellman_condition_random_maps(self):
        rng = np.random.default_rng(41)
        for _ in range(25):
            grid = generate(WorldSpec("forest", 8, 8, seed=int(rng.integers(1 << 30)),
                                      params={"density": 0.3}))
            h = cost_to_go_field(grid)
            for y in range(grid.height):
                for x in range(grid.width):
                    cost = h.cost(x, y)
                    if cost is None or (x, y) == grid.goal:
                        continue
                    candidates = [h.cost(*child) + step
                                  for child, step in expand(grid, (x, y))
                                  if h.cost(*child) is not None]
                    assert cost == min(candidates)


class TestOptimalRegion:
    def test_empty3x3_region(self, empty3x3):
        g = cost_to_come_field(empty3x3)
        h = cost_to_go_field(empty3x3)
        assert optimal_region(empty3x3, g, h) == {(0, 0), (1, 1), (2, 2)}
        # e.g. (1, 0): g*+h* = 1 + (1+sqrt2) != 2*sqrt2
        assert (g.cost(1, 0) + h.cost(1, 0)) != optimal_cost(empty3x3, h)

    def test_corridor_region_is_whole_corridor(self):
        grid = grid_from_art(
            """
            @@@G
            S..@
            """
        )
        g = cost_to_come_field(grid)
        h = cost_to_go_field(grid)
        assert optimal_region(grid, g, h) == {(0, 0), (1, 0), (2, 0), (3, 1)}

    def test_4x3_region_matches_path_enumeration(self):
        grid = grid_from_art(
            """
            ...G
            ....
            S...
            """
        )
        g = cost_to_come_field(grid)
        h = cost_to_go_field(grid)
        region = optimal_region(grid, g, h)
        assert region == optimal_path_cells(grid)
        assert region == {(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)}

    def test_sum_at_least_cstar_with_equality_on_region(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            grid = generate(WorldSpec("forest", 10, 10, seed=int(rng.integers(1 << 30)),
                                      params={"density": 0.25}))
            g = cost_to_come_field(grid)
            h = cost_to_go_field(grid)
            c_star = optimal_cost(grid, h)
            mask = region_mask(grid, g, h)
            for y in range(grid.height):
                for x in range(grid.width):
                    gc, hc = g.cost(x, y), h.cost(x, y)
                    if gc is None or hc is None:
                        assert not mask[y, x]
                        continue
                    total = gc + hc
                    assert total >= c_star
                    assert mask[y, x] == (total == c_star)
            assert mask[grid.start[1], grid.start[0]]
            assert mask[grid.goal[1], grid.goal[0]]


class TestRegionDistances:
    def test_empty3x3_one_ring(self, empty3x3):
        rating = region_distances(empty3x3, {(0, 0), (1, 1), (2, 2)}, m=10)
        off_diagonal = [(1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2)]
        for x, y in off_diagonal:
            assert rating.step_distance(x, y) == 1
            assert rating.rating(x, y) == pytest.approx(0.9)
        for x, y in [(0, 0), (1, 1), (2, 2)]:
            assert rating.rating(x, y) == 1.0
            assert rating.step_distance(x, y) == 0

    def test_cell_at_m_steps_rates_zero(self):
        grid = grid_from_art("S....G\n......")
        rating = region_distances(grid, {grid.start}, m=2)
        # (3, y) is 3 steps away -> far; (2, y) is exactly m=2 steps -> rating 0
        assert rating.rating(2, 0) == 0.0
        assert rating.rating(2, 1) == 0.0
        assert rating.step_distance(2, 0) == -1  # capped: indistinguishable from far
        assert rating.rating(1, 1) == pytest.approx(0.5)

    def test_ratings_are_multiples_of_inverse_m(self):
        grid = generate(WorldSpec("forest", 16, 16, seed=9, params={"density": 0.2}))
        rating = ground_truth_rating(grid, m=10)
        levels = np.round(rating.d * 10)
        assert np.allclose(rating.d, levels / 10.0)

    def test_ring_invariant_random_maps(self):
        rng = np.random.default_rng(47)
        for _ in range(10):
            grid = generate(WorldSpec("forest", 12, 12, seed=int(rng.integers(1 << 30)),
                                      params={"density": 0.25}))
            m = 5
            rating = ground_truth_rating(grid, m=m)
            for y in range(grid.height):
                for x in range(grid.width):
                    k = rating.step_distance(x, y)
                    if k is None or k < 1:
                        continue
                    neighbor_ks = []
                    for dx in (-1, 0, 1):
                        for dy in (-1, 0, 1):
                            if dx == dy == 0:
                                continue
                            nx, ny = x + dx, y + dy
                            if grid.is_free(nx, ny):
                                nk = rating.step_distance(nx, ny)
                                if nk is not None and nk >= 0:
                                    neighbor_ks.append(nk)
                    assert k - 1 in neighbor_ks
                    assert min(neighbor_ks) == k - 1

    def test_start_goal_rated_one(self):
        for world in ("forest", "maze", "single_bugtrap"):
            grid = generate(WorldSpec(world, 16, 16, seed=3))
            rating = ground_truth_rating(grid, m=10)
            assert rating.rating(*grid.start) == 1.0
            assert rating.rating(*grid.goal) == 1.0


class TestBruteforceEquivalence:
    def test_fields_and_region_match_enumeration_6x6(self):
        # small version of the acceptance gate (which runs 100 seeds)
        from conftest import random_forest_map

        for seed in range(10):
            grid = random_forest_map(seed)
            h = cost_to_go_field(grid)
            g = cost_to_come_field(grid)
            bf_h = bf_cost_field(grid, grid.goal)
            bf_g = bf_cost_field(grid, grid.start)
            for y in range(6):
                for x in range(6):
                    assert h.cost(x, y) == bf_h.get((x, y))
                    assert g.cost(x, y) == bf_g.get((x, y))
            assert optimal_region(grid, g, h) == optimal_path_cells(grid)


class TestExportDataset:
    def _synthetic(self, counts):
        # build a rating grid with the given class sizes on a 32x32 map
        free = np.ones((32, 32), bool)
        grid = None
        d = np.zeros((32, 32))
        reach = np.zeros((32, 32), bool)
        cells = [(x, y) for y in range(32) for x in range(32)]
        idx = 0
        for value, count in counts.items():
            for _ in range(count):
                x, y = cells[idx]
                idx += 1
                d[y, x] = value
                reach[y, x] = True
        from gridslope import GridMap

        grid = GridMap(free, (0, 0), (31, 31), map_id="synthetic")
        rating = RatingGrid(d=d, m=10, source="ground_truth",
                            k=None, reach=reach, map_id="synthetic")
        return grid, rating

    def test_balance_downscales_largest_to_second(self):
        grid, rating = self._synthetic({0.0: 500, 1.0: 60, 0.9: 80})
        samples = export_dataset([grid], [rating], balance=True, seed=1)
        by_class = {}
        for s in samples:
            by_class[s.rating] = by_class.get(s.rating, 0) + 1
        assert by_class == {0.0: 80, 1.0: 60, 0.9: 80}

    def test_no_balance_keeps_every_reachable_cell(self):
        grid, rating = self._synthetic({0.0: 500, 1.0: 60, 0.9: 80})
        samples = export_dataset([grid], [rating], balance=False)
        assert len(samples) == 640

    def test_deterministic_given_seed(self):
        grid, rating = self._synthetic({0.0: 300, 0.5: 100, 1.0: 50})
        a = export_dataset([grid], [rating], balance=True, seed=7)
        b = export_dataset([grid], [rating], balance=True, seed=7)
        assert a == b

    def test_labels_match_grid(self):
        grid = generate(WorldSpec("forest", 10, 10, seed=2, params={"density": 0.2}))
        rating = ground_truth_rating(grid, m=10)
        for s in export_dataset([grid], [rating]):
            assert grid.is_free(s.x, s.y)
            assert s.rating == rating.rating(s.x, s.y)
