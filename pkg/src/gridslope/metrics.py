"""Evaluation metrics computed from a search result plus oracle data.

Three numbers per run: relative error of expanded nodes against the node
count of a minimum-cost path, relative error of the reconstructed path length
against the optimal cost, and the unused open-list size normalized by the
map's cell count (1024 on the standard 32x32 maps).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .grid import ExactCost, GridMap
from .search import SearchResult

CSV_HEADER = "map_id,method,expanded_rel_err,path_rel_err,open_norm,failsafe_count,status"


@dataclass
class BenchRecord:
    """One (map, method) evaluation row; metric fields are None on failure."""

    map_id: str
    method: str
    expanded_rel_err: float | None
    path_rel_err: float | None
    open_norm: float
    failsafe_count: int
    status: str

    def csv_row(self) -> str:
        def fmt(v):
            return "" if v is None else f"{v:.6f}"

        return (f"{self.map_id},{self.method},{fmt(self.expanded_rel_err)},"
                f"{fmt(self.path_rel_err)},{self.open_norm:.6f},"
                f"{self.failsafe_count},{self.status}")


def min_path_nodes(c_star: ExactCost) -> int:
    """Node count of a minimum-cost path.

    Every optimal path takes exactly c_star.cardinal unit moves and
    c_star.diagonal diagonal moves (the pair is unique), so the count is
    well defined.
    """
    return c_star.cardinal + c_star.diagonal + 1


def expanded_rel_err(result: SearchResult, n_min: int) -> float:
    """Percent excess of expanded nodes over the ideal n_min."""
    if n_min < 1:
        raise ContractViolation(f"n_min must be >= 1, got {n_min}")
    if not result.success:
        raise ContractViolation("expanded_rel_err is undefined for failed searches")
    return 100.0 * (len(result.expanded) - n_min) / n_min


def path_rel_err(result: SearchResult, c_star: ExactCost) -> float:
    """Percent excess of the reconstructed path cost over the optimal cost.

    Exactly 0.0 whenever the costs match as integer pairs; float arithmetic
    only enters for genuinely suboptimal paths.
    """
    if not result.success:
        raise ContractViolation("path_rel_err is undefined for failed searches")
    if result.path_cost == c_star:
        return 0.0
    if c_star.is_zero():
        return 0.0  # start == goal
    return 100.0 * (result.path_cost.value() - c_star.value()) / c_star.value()


def open_norm(result: SearchResult, grid: GridMap) -> float:
    """Unused entries on the active open list over the cell count.

    The active list is the structure the planner keeps sorted for selection;
    pruning aims to keep it small.  Backup storage is reported separately by
    open_stored_norm.
    """
    return result.open_active / grid.cell_count()


def open_stored_norm(result: SearchResult, grid: GridMap) -> float:
    """All stored unused entries (backup list included) over the cell count."""
    return result.open_remaining / grid.cell_count()


def make_record(map_id: str, method: str, result: SearchResult, grid: GridMap,
                c_star: ExactCost) -> BenchRecord:
    if result.success:
        exp_err = expanded_rel_err(result, min_path_nodes(c_star))
        p_err = path_rel_err(result, c_star)
    else:
        exp_err = None
        p_err = None
    return BenchRecord(
        map_id=map_id,
        method=method,
        expanded_rel_err=exp_err,
        path_rel_err=p_err,
        open_norm=open_norm(result, grid),
        failsafe_count=result.failsafe_count,
        status=result.status,
    )
