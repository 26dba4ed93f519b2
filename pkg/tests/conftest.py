import numpy as np
import pytest

from gridslope import GridMap
from gridslope.grid import default_corners
from gridslope.worlds import solvable


def random_forest_map(seed, size=6, density=0.25, map_id=None):
    """Small seeded random forest (below worldgen's size floor)."""
    for attempt in range(100):
        rng = np.random.default_rng([seed, attempt])
        free = rng.random((size, size)) >= density
        free[0, 0] = True
        free[-1, -1] = True
        if solvable(free, (0, 0), (size - 1, size - 1)):
            return GridMap(free, (0, 0), (size - 1, size - 1),
                           map_id=map_id or f"forest{size}_{seed:04d}")
    raise AssertionError(f"no solvable {size}x{size} forest for seed {seed}")


def grid_from_art(art: str, start=None, goal=None, map_id="art"):
    """Build a map from ASCII art (top row first). 'S'/'G' mark free start/goal."""
    rows = [r.strip() for r in art.strip().splitlines()]
    height = len(rows)
    width = len(rows[0])
    free = np.zeros((height, width), dtype=bool)
    for file_row, row in enumerate(rows):
        assert len(row) == width, "ragged art"
        y = height - 1 - file_row
        for x, ch in enumerate(row):
            if ch in ".SG":
                free[y, x] = True
                if ch == "S":
                    start = (x, y)
                elif ch == "G":
                    goal = (x, y)
            else:
                assert ch == "@", f"bad art char {ch!r}"
    if start is None or goal is None:
        cs, cg = default_corners(free)
        start = start or cs
        goal = goal or cg
    return GridMap(free, start, goal, map_id=map_id)


@pytest.fixture
def empty3x3():
    return grid_from_art(
        """
        ..G
        ...
        S..
        """
    )
