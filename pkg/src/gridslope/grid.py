"""Planning environment: occupancy grid, exact octile costs, 8-connected moves.

Cells are ``(x, y)`` tuples with ``(0, 0)`` at the lower-left corner; row 0 of
a rendered or serialized map is the *top* row (``y = height - 1``).

Path costs are kept as the integer pair ``cardinal + diagonal * sqrt(2)``.
Because sqrt(2) is irrational the pair is a canonical form: two costs are
numerically equal iff both components match, and ordering is decidable with
integer arithmetic alone.  Ground-truth region extraction relies on this
exactness (equality tests on summed path costs), so nothing here ever rounds
through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

Cell = tuple  # (x, y)

# Fixed child enumeration order: cardinals, then diagonals. Planner insertion
# sequence (a documented tie-break key) inherits this order, so it must never
# change between releases.
NEIGHBOR_STEPS = (
    (1, 0, False),
    (-1, 0, False),
    (0, 1, False),
    (0, -1, False),
    (1, 1, True),
    (-1, 1, True),
    (-1, -1, True),
    (1, -1, True),
)

SQRT2 = math.sqrt(2.0)


def compare_pair(dc: int, dd: int) -> int:
    """Sign of dc + dd*sqrt(2), using integer arithmetic only.

    Same-sign deltas decide directly; mixed signs are settled by comparing
    squared magnitudes (dc^2 vs 2*dd^2, never equal for dd != 0).
    """
    if dc >= 0 and dd >= 0:
        return 0 if dc == 0 and dd == 0 else 1
    if dc <= 0 and dd <= 0:
        return -1
    if dc > 0:  # dd < 0
        return 1 if dc * dc > 2 * dd * dd else -1
    # dc < 0, dd > 0
    return 1 if 2 * dd * dd > dc * dc else -1


@dataclass(frozen=True)
class ExactCost:
    """Octile path cost ``cardinal + diagonal * sqrt(2)`` as an exact integer pair."""

    cardinal: int = 0
    diagonal: int = 0

    def __post_init__(self):
        if self.cardinal < 0 or self.diagonal < 0:
            raise ContractViolation(f"negative cost components: {self}")

    def value(self) -> float:
        """Numeric value (for reporting; never used for ordering or equality)."""
        return self.cardinal + self.diagonal * SQRT2

    def is_zero(self) -> bool:
        return self.cardinal == 0 and self.diagonal == 0

    def __add__(self, other: "ExactCost") -> "ExactCost":
        return ExactCost(self.cardinal + other.cardinal, self.diagonal + other.diagonal)

    def __lt__(self, other: "ExactCost") -> bool:
        return compare_pair(self.cardinal - other.cardinal, self.diagonal - other.diagonal) < 0

    def __le__(self, other: "ExactCost") -> bool:
        return compare_pair(self.cardinal - other.cardinal, self.diagonal - other.diagonal) <= 0

    def __gt__(self, other: "ExactCost") -> bool:
        return compare_pair(self.cardinal - other.cardinal, self.diagonal - other.diagonal) > 0

    def __ge__(self, other: "ExactCost") -> bool:
        return compare_pair(self.cardinal - other.cardinal, self.diagonal - other.diagonal) >= 0


ZERO_COST = ExactCost(0, 0)
CARDINAL_STEP = ExactCost(1, 0)
DIAGONAL_STEP = ExactCost(0, 1)


def compare_cost(a: ExactCost, b: ExactCost) -> int:
    """-1 / 0 / +1 ordering of two exact costs."""
    return compare_pair(a.cardinal - b.cardinal, a.diagonal - b.diagonal)


def euclidean_value(a: Cell, b: Cell) -> float:
    """Straight-line distance between two cells."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


class GridMap:
    """Occupancy grid with a start and goal cell.

    ``free`` is indexed ``[y, x]`` with True meaning passable. The array is
    frozen on construction; instances are safe to share across workers.
    """

    def __init__(self, free: np.ndarray, start: Cell, goal: Cell, map_id: str = ""):
        free = np.ascontiguousarray(free, dtype=bool)
        if free.ndim != 2:
            raise ContractViolation("occupancy grid must be 2-D")
        height, width = free.shape
        if width < 2 or height < 2:
            raise ContractViolation(f"map must be at least 2x2, got {width}x{height}")
        for name, (x, y) in (("start", tuple(start)), ("goal", tuple(goal))):
            if not (0 <= x < width and 0 <= y < height):
                raise ContractViolation(f"{name} cell ({x}, {y}) out of bounds")
            if not free[y, x]:
                raise ContractViolation(f"{name} cell ({x}, {y}) is an obstacle")
        free.setflags(write=False)
        self.free_mask = free
        self.width = width
        self.height = height
        self.start: Cell = tuple(start)
        self.goal: Cell = tuple(goal)
        self.id = map_id

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height and bool(self.free_mask[y, x])

    def free_cells(self) -> int:
        return int(self.free_mask.sum())

    def cell_count(self) -> int:
        return self.width * self.height

    def __repr__(self):
        return (
            f"GridMap(id={self.id!r}, {self.width}x{self.height}, "
            f"start={self.start}, goal={self.goal})"
        )


def default_corners(free: np.ndarray) -> tuple[Cell, Cell]:
    """Default query: start at the lower-left corner, goal at the upper-right."""
    height, width = free.shape
    return (0, 0), (width - 1, height - 1)


def expand(grid: GridMap, cell: Cell, unit_costs: bool = False):
    """Free in-bounds 8-neighbors of ``cell`` with their step costs.

    Diagonal moves between two diagonally-touching obstacles are permitted:
    only the target cell is checked.
    """
    x, y = cell
    if not grid.in_bounds(x, y):
        raise ContractViolation(f"expand: cell ({x}, {y}) out of bounds")
    if not grid.free_mask[y, x]:
        raise ContractViolation(f"expand: cell ({x}, {y}) is an obstacle")
    children = []
    for dx, dy, diag in NEIGHBOR_STEPS:
        nx, ny = x + dx, y + dy
        if grid.is_free(nx, ny):
            step = DIAGONAL_STEP if (diag and not unit_costs) else CARDINAL_STEP
            children.append(((nx, ny), step))
    return children
