"""Exhaustive-search ground truth for a map.

The pipeline is: exact cost-to-go and cost-to-come fields (Dijkstra run to
exhaustion over the reachable component), the optimal-path region (cells whose
summed cost equals the best start-goal cost, tested with exact pair equality),
graded neighboring regions by BFS step distance, normalized per-cell
optimality ratings, and a flat training-sample export with optional class
balancing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import OracleError
from .grid import ExactCost, GridMap
from .kernels import INF

DEFAULT_REGION_LEVELS = 10  # rating granularity m; ratings land on multiples of 1/m


@dataclass
class CostField:
    """Per-cell exact cost pair; INF components mark unreachable cells."""

    cardinal: np.ndarray  # int64 [H, W]
    diagonal: np.ndarray  # int64 [H, W]
    role: str  # "cost_to_go" | "cost_to_come"

    @property
    def reach(self) -> np.ndarray:
        return self.cardinal < INF

    def cost(self, x: int, y: int) -> ExactCost | None:
        if self.cardinal[y, x] >= INF:
            return None
        return ExactCost(int(self.cardinal[y, x]), int(self.diagonal[y, x]))

    def numeric(self) -> np.ndarray:
        """Float cost values, +inf where unreachable."""
        values = self.cardinal + self.diagonal * np.sqrt(2.0)
        values = values.astype(np.float64)
        values[~self.reach] = np.inf
        return values


@dataclass
class RatingGrid:
    """Per-cell optimality ratings d in [0, 1].

    Ground-truth grids carry the BFS step distance ``k`` (far/unreachable cells
    hold -1) and the reachability mask; grids loaded from learned-model files
    carry ratings only.
    """

    d: np.ndarray  # float64 [H, W]
    m: int
    source: str  # "ground_truth" | "learned"
    k: np.ndarray | None = None  # int32 raw BFS steps, -1 = beyond m or unreachable
    reach: np.ndarray | None = None  # bool, cells connected to the region
    map_id: str = ""

    def rating(self, x: int, y: int) -> float:
        return float(self.d[y, x])

    def step_distance(self, x: int, y: int) -> int | None:
        if self.k is None:
            return None
        return int(self.k[y, x])

    @property
    def height(self) -> int:
        return self.d.shape[0]

    @property
    def width(self) -> int:
        return self.d.shape[1]


@dataclass(frozen=True)
class DatasetSample:
    map_id: str
    x: int
    y: int
    rating: float


def cost_to_go_field(grid: GridMap, unit_costs: bool = False) -> CostField:
    """Exact cost from every reachable cell to the goal (search run to exhaustion)."""
    gx, gy = grid.goal
    card, diag = kernels.dijkstra_field(grid.free_mask, gx, gy, unit_costs)
    if card[grid.start[1], grid.start[0]] >= INF:
        raise OracleError(f"goal {grid.goal} cannot reach start {grid.start} on map {grid.id!r}")
    return CostField(card, diag, "cost_to_go")


def cost_to_come_field(grid: GridMap, unit_costs: bool = False) -> CostField:
    """Exact cost from the start to every reachable cell."""
    sx, sy = grid.start
    card, diag = kernels.dijkstra_field(grid.free_mask, sx, sy, unit_costs)
    if card[grid.goal[1], grid.goal[0]] >= INF:
        raise OracleError(f"start {grid.start} cannot reach goal {grid.goal} on map {grid.id!r}")
    return CostField(card, diag, "cost_to_come")


def optimal_cost(grid: GridMap, h: CostField) -> ExactCost:
    """Best start-goal cost C*, read off the cost-to-go field at the start."""
    c = h.cost(*grid.start)
    if c is None:
        raise OracleError(f"start unreachable on map {grid.id!r}")
    return c


def optimal_region(grid: GridMap, g: CostField, h: CostField) -> set:
    """Cells on some optimal path: exactly those with g* + h* equal to C*.

    The sum and the comparison are on exact integer pairs; a float epsilon
    here would corrupt region boundaries.
    """
    mask = region_mask(grid, g, h)
    ys, xs = np.nonzero(mask)
    return {(int(x), int(y)) for x, y in zip(xs, ys)}


def region_mask(grid: GridMap, g: CostField, h: CostField) -> np.ndarray:
    best = optimal_cost(grid, h)
    reach = g.reach & h.reach
    sum_c = g.cardinal + h.cardinal
    sum_d = g.diagonal + h.diagonal
    return reach & (sum_c == best.cardinal) & (sum_d == best.diagonal)


def region_distances(grid: GridMap, region, m: int = DEFAULT_REGION_LEVELS) -> RatingGrid:
    """Rating grid from BFS step distances to the region.

    Each 8-connected move counts one step, diagonals included.  Rating is
    (m - min(k, m)) / m: 1 on the region, 0 at >= m steps, on obstacles, and
    on unreachable cells.
    """
    if m < 1:
        raise OracleError(f"region level count must be >= 1, got {m}")
    sources = np.zeros(grid.free_mask.shape, dtype=bool)
    if isinstance(region, np.ndarray):
        sources |= region.astype(bool)
    else:
        if not region:
            raise OracleError("empty optimal region")
        for x, y in region:
            sources[y, x] = True
    raw = kernels.bfs_steps(grid.free_mask, sources)
    reach = raw >= 0
    capped = np.where(reach, np.minimum(raw, m), m).astype(np.int64)
    d = (m - capped) / float(m)
    k = np.where(reach & (raw < m), raw, -1).astype(np.int32)
    return RatingGrid(d=d, m=m, source="ground_truth", k=k, reach=reach, map_id=grid.id)


def ground_truth_rating(grid: GridMap, m: int = DEFAULT_REGION_LEVELS,
                        unit_costs: bool = False) -> RatingGrid:
    """Full ground-truth pipeline for one map: fields -> region -> ratings."""
    h = cost_to_go_field(grid, unit_costs)
    g = cost_to_come_field(grid, unit_costs)
    return region_distances(grid, region_mask(grid, g, h), m)


def export_dataset(maps, grids, balance: bool = False, seed: int = 0):
    """One (map, cell, rating) sample per reachable free cell.

    With ``balance`` the most represented rating class of each map is randomly
    subsampled down to the second most represented one; other classes are kept
    whole.  Sampling is seeded and cell order is canonical (y-major), so the
    export is deterministic.
    """
    if len(maps) != len(grids):
        raise OracleError("maps and rating grids must pair up")
    rng = np.random.default_rng(seed)
    samples: list[DatasetSample] = []
    for grid_map, rating in zip(maps, grids):
        if rating.reach is None:
            raise OracleError(f"rating grid for {grid_map.id!r} lacks reachability data")
        ys, xs = np.nonzero(rating.reach & grid_map.free_mask)
        cells = [(int(x), int(y)) for y, x in zip(ys, xs)]
        if balance:
            cells = _balance_cells(cells, rating, rng)
        for x, y in cells:
            samples.append(DatasetSample(grid_map.id, x, y, float(rating.d[y, x])))
    return samples


def _balance_cells(cells, rating: RatingGrid, rng) -> list:
    by_class: dict[int, list] = {}
    for cell in cells:
        key = int(round(rating.d[cell[1], cell[0]] * rating.m))
        by_class.setdefault(key, []).append(cell)
    if len(by_class) < 2:
        return cells
    sizes = sorted(((len(v), k) for k, v in by_class.items()), reverse=True)
    largest_n, largest_key = sizes[0]
    second_n = sizes[1][0]
    if largest_n > second_n:
        keep = rng.choice(largest_n, size=second_n, replace=False)
        kept = [by_class[largest_key][i] for i in sorted(keep)]
        by_class[largest_key] = kept
    out = []
    for cell in cells:
        key = int(round(rating.d[cell[1], cell[0]] * rating.m))
        if key == largest_key:
            continue
        out.append(cell)
    out.extend(by_class[largest_key])
    return out
