import numpy as np
import pytest

from gridslope import (AlwaysPassRater, ConfigError, EuclideanHeuristic,
                       FieldLookupError, GridHeuristic, GridRater,
                       cost_to_go_field, greedy_search, ground_truth_rating,
                       h_value, optimal_cost, rate)
from gridslope.worlds import WorldSpec, generate

from conftest import grid_from_art


class TestHeuristic:
    def test_euclidean_values(self):
        h = EuclideanHeuristic()
        assert h_value(h, (0, 0), (3, 4)) == pytest.approx(5.0)
        assert h_value(h, (7, 7), (7, 7)) == 0.0

    def test_grid_lookup_start_value_is_cstar(self):
        grid = generate(WorldSpec("forest", 12, 12, seed=6))
        field = cost_to_go_field(grid)
        h = GridHeuristic(field.numeric())
        c_star = optimal_cost(grid, field)
        assert h_value(h, grid.start, grid.goal) == pytest.approx(c_star.value(), abs=1e-9)
        assert h_value(h, grid.goal, grid.start) == 0.0  # goal param is ignored

    def test_grid_lookup_out_of_field(self):
        h = GridHeuristic(np.zeros((4, 4)))
        with pytest.raises(FieldLookupError):
            h.value((4, 0), (0, 0))

    def test_grid_heuristic_requires_field(self):
        with pytest.raises(ConfigError):
            GridHeuristic(None)

    def test_perfect_h_descends_monotonically_on_empty_map(self):
        grid = grid_from_art("\n".join(["." * 8] * 8))
        field = cost_to_go_field(grid)
        h = GridHeuristic(field.numeric())
        result = greedy_search(grid, h)
        values = [h.value(cell, grid.goal) for cell in result.expanded]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestRater:
    def test_ground_truth_region_and_far(self):
        grid = generate(WorldSpec("forest", 12, 12, seed=8, params={"density": 0.3}))
        rating = ground_truth_rating(grid, m=3)
        rater = GridRater(rating)
        assert rate(rater, grid.start) == 1.0
        far = np.argwhere((rating.d == 0.0) & grid.free_mask)
        if len(far):
            y, x = far[0]
            assert rate(rater, (int(x), int(y))) == 0.0

    def test_always_pass(self):
        rater = AlwaysPassRater()
        assert rate(rater, (0, 0)) == 1.0
        assert rate(rater, (99, 99)) == 1.0

    def test_values_within_unit_interval(self):
        for world in ("maze", "gaps_forest"):
            grid = generate(WorldSpec(world, 16, 16, seed=1))
            rater = GridRater(ground_truth_rating(grid))
            for y in range(grid.height):
                for x in range(grid.width):
                    assert 0.0 <= rate(rater, (x, y)) <= 1.0

    def test_missing_grid_is_config_error(self):
        with pytest.raises(ConfigError):
            GridRater(None)

    def test_out_of_bounds_lookup(self):
        grid = generate(WorldSpec("forest", 8, 8, seed=0))
        rater = GridRater(ground_truth_rating(grid))
        with pytest.raises(FieldLookupError):
            rater.rate((8, 8))
