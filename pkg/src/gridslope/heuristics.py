"""Pluggable cost-to-go estimators and optimality raters for the planners."""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, FieldLookupError
from .grid import Cell, euclidean_value
from .oracle import RatingGrid


class EuclideanHeuristic:
    """Straight-line distance to the goal."""

    kind = "euclidean"

    def value(self, cell: Cell, goal: Cell) -> float:
        return euclidean_value(cell, goal)


class GridHeuristic:
    """Per-cell cost-to-go values loaded from a grid file (the goal is baked in)."""

    kind = "grid_lookup"

    def __init__(self, values: np.ndarray):
        if values is None:
            raise ConfigError("grid heuristic requires a value field")
        self.values = np.asarray(values, dtype=np.float64)

    def value(self, cell: Cell, goal: Cell) -> float:
        x, y = cell
        h, w = self.values.shape
        if not (0 <= x < w and 0 <= y < h):
            raise FieldLookupError(f"cell ({x}, {y}) outside stored {w}x{h} field")
        return float(self.values[y, x])


def h_value(heuristic, cell: Cell, goal: Cell) -> float:
    return heuristic.value(cell, goal)


class GridRater:
    """Rates cells from a rating grid (ground-truth or learned)."""

    def __init__(self, grid: RatingGrid):
        if grid is None:
            raise ConfigError("grid rater requires a rating grid")
        self.grid = grid
        self.kind = grid.source

    def rate(self, cell: Cell) -> float:
        x, y = cell
        if not (0 <= x < self.grid.width and 0 <= y < self.grid.height):
            raise FieldLookupError(f"cell ({x}, {y}) outside stored rating grid")
        return float(self.grid.d[y, x])


class AlwaysPassRater:
    """Rates every cell 1.0; turns pruning searches into plain greedy."""

    kind = "always_pass"

    def rate(self, cell: Cell) -> float:
        return 1.0


def rate(rater, cell: Cell) -> float:
    return rater.rate(cell)
