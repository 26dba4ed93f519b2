"""The three planners: greedy best-first search and its two pruning variants.

All three share one selection discipline: pop the open entry with minimal
(h, exact g, insertion sequence), close it, goal-test it, then generate
children.  The pruning variants differ only in where a surviving child goes:

* fixed-threshold pruning ("slope"): children rated <= tau are parked on a
  backup open list; when the active list runs dry the backup is swapped in
  and tau is halved (below the floor it degenerates to -inf = pass-all),
  which restores completeness.
* recursive pruning ("sloper"): children rated <= tau are discarded; running
  dry restarts the whole search from scratch with tau lowered by a fixed
  decrement, finally with tau = -inf (plain greedy).

Selecting on h alone (not g + h) is deliberate; g is still tracked exactly
for reparenting, path costs, and reporting.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .errors import ContractViolation
from .grid import ExactCost, GridMap, ZERO_COST, expand

PASS_ALL = float("-inf")

STATUS_SUCCESS = "success"
STATUS_EXHAUSTED = "exhausted"
STATUS_NODE_LIMIT = "node_limit"


@dataclass
class SearchConfig:
    """Shared planner knobs; tau semantics depend on the planner."""

    node_limit: int | None = None  # default: map cell count
    tau: float = 0.9  # fixed-threshold pruning cutoff
    tau_floor: float = 0.05  # halving below this point degenerates to pass-all
    sloper_tau0: float = 0.9  # recursive variant's initial cutoff
    sloper_step: float = 0.1  # recursive variant's per-restart decrement
    unit_costs: bool = False

    def validate(self):
        for name, value in (("tau", self.tau), ("sloper_tau0", self.sloper_tau0)):
            if value != PASS_ALL and not (0.0 <= value <= 1.0):
                raise ContractViolation(f"{name} must be in [0, 1] or -inf, got {value}")
        if self.sloper_step <= 0:
            raise ContractViolation("sloper_step must be positive")

    def limit_for(self, grid: GridMap) -> int:
        return self.node_limit if self.node_limit is not None else grid.cell_count()


@dataclass
class SearchResult:
    status: str
    path: list  # [Cell]; empty on failure
    path_cost: ExactCost
    expanded: list  # ordered closed cells of the reported attempt
    open_remaining: int  # all stored unused entries: open + backup at termination
    open_active: int = 0  # the active open list alone (== open_remaining without a backup)
    failsafe_count: int = 0
    final_tau: float | None = None
    expanded_total: int = 0  # cumulative over restarts; == len(expanded) otherwise

    @property
    def success(self) -> bool:
        return self.status == STATUS_SUCCESS


class OpenList:
    """Min-priority queue keyed by (h, exact g, insertion seq), one entry per cell.

    g updates are handled by pushing a replacement tuple and dropping the
    stale one on pop; the live (g, parent, seq, h) per cell lives in a dict.
    """

    __slots__ = ("_heap", "_live")

    def __init__(self):
        self._heap = []
        self._live = {}

    def __len__(self):
        return len(self._live)

    def __contains__(self, cell):
        return cell in self._live

    def g_of(self, cell) -> ExactCost:
        return self._live[cell][1]

    def add(self, cell, h: float, g: ExactCost, parent, seq: int):
        self._live[cell] = (h, g, seq, parent)
        heapq.heappush(self._heap, (h, g, seq, cell))

    def lower(self, cell, g: ExactCost, parent):
        h, _, seq, _ = self._live[cell]
        self._live[cell] = (h, g, seq, parent)
        heapq.heappush(self._heap, (h, g, seq, cell))

    def pop(self):
        while True:
            h, g, seq, cell = heapq.heappop(self._heap)
            entry = self._live.get(cell)
            if entry is None or entry[1] is not g:
                continue  # stale tuple from a superseded g
            del self._live[cell]
            return cell, h, g, entry[3]

    def cells(self):
        return self._live.keys()


def _halved(tau: float, floor: float) -> float:
    tau = tau / 2.0
    return PASS_ALL if tau < floor else tau


def _run(grid: GridMap, heuristic, cfg: SearchConfig, *, mode: str,
         rater=None, tau: float | None = None, observer=None) -> SearchResult:
    node_limit = cfg.limit_for(grid)
    goal = grid.goal
    seq = itertools.count()
    open_main = OpenList()
    open_backup = OpenList() if mode == "slope" else None

    start_g = ZERO_COST
    open_main.add(grid.start, heuristic.value(grid.start, goal), start_g, None, next(seq))
    failsafes = 0
    if observer is not None:
        observer(grid.start, failsafes)

    closed = set()
    parents = {}
    expanded = []
    status = STATUS_EXHAUSTED
    goal_g = ZERO_COST

    while True:
        if len(closed) > node_limit:
            status = STATUS_NODE_LIMIT
            break
        if len(open_main) == 0:
            if mode == "slope" and len(open_backup) > 0:
                open_main, open_backup = open_backup, OpenList()
                tau = _halved(tau, cfg.tau_floor)
                failsafes += 1
                continue
            status = STATUS_EXHAUSTED
            break

        cell, _, g, parent = open_main.pop()
        closed.add(cell)
        parents[cell] = parent
        expanded.append(cell)
        if cell == goal:
            status = STATUS_SUCCESS
            goal_g = g
            break

        for child, step in expand(grid, cell, cfg.unit_costs):
            if child in closed:
                continue
            g_child = g + step
            if child in open_main:
                if g_child < open_main.g_of(child):
                    open_main.lower(child, g_child, cell)
                continue
            if open_backup is not None and child in open_backup:
                if g_child < open_backup.g_of(child):
                    open_backup.lower(child, g_child, cell)
                continue
            if mode == "greedy":
                target = open_main
            else:
                if rater.rate(child) > tau:
                    target = open_main
                elif mode == "slope":
                    target = open_backup
                else:  # sloper: discard
                    continue
            target.add(child, heuristic.value(child, goal), g_child, cell, next(seq))
            if observer is not None and target is open_main:
                observer(child, failsafes)

    path: list = []
    path_cost = ZERO_COST
    if status == STATUS_SUCCESS:
        node = goal
        while node is not None:
            path.append(node)
            node = parents[node]
        path.reverse()
        path_cost = goal_g

    open_remaining = len(open_main) + (len(open_backup) if open_backup is not None else 0)
    return SearchResult(
        status=status,
        path=path,
        path_cost=path_cost,
        expanded=expanded,
        open_remaining=open_remaining,
        open_active=len(open_main),
        failsafe_count=failsafes,
        final_tau=tau,
        expanded_total=len(expanded),
    )


def greedy_search(grid: GridMap, heuristic, cfg: SearchConfig | None = None) -> SearchResult:
    """Plain greedy best-first search (the pruning-free baseline)."""
    cfg = cfg or SearchConfig()
    cfg.validate()
    return _run(grid, heuristic, cfg, mode="greedy")


def slope_search(grid: GridMap, heuristic, rater, cfg: SearchConfig | None = None,
                 observer=None) -> SearchResult:
    """Fixed-threshold pruning search with a backup open list.

    ``observer(cell, failsafe_count)`` is invoked on every insertion into the
    *active* open list (instrumentation for pruning-soundness checks).
    """
    cfg = cfg or SearchConfig()
    cfg.validate()
    return _run(grid, heuristic, cfg, mode="slope", rater=rater, tau=cfg.tau,
                observer=observer)


def sloper_search(grid: GridMap, heuristic, rater, cfg: SearchConfig | None = None) -> SearchResult:
    """Recursive pruning search: discard pruned children, restart on exhaustion.

    Restart i runs at tau0 - i*step (computed as one multiply and rounded so
    the ladder stays on exact decimals); once the ladder would go negative the
    final attempt runs with tau = -inf, i.e. plain greedy.  The reported
    expansion log and open size belong to the final attempt; the cumulative
    count across attempts lands in ``expanded_total``.
    """
    cfg = cfg or SearchConfig()
    cfg.validate()
    restarts = 0
    total = 0
    while True:
        if cfg.sloper_tau0 == PASS_ALL:
            tau = PASS_ALL
        else:
            tau = round(cfg.sloper_tau0 - restarts * cfg.sloper_step, 12)
            if tau < 0.0:
                tau = PASS_ALL
        result = _run(grid, heuristic, cfg, mode="sloper", rater=rater, tau=tau)
        total += len(result.expanded)
        if result.status != STATUS_EXHAUSTED or tau == PASS_ALL:
            result.failsafe_count = restarts
            result.expanded_total = total
            return result
        restarts += 1


def path_is_valid(grid: GridMap, result: SearchResult, unit_costs: bool = False) -> bool:
    """Success sanity: 8-connected collision-free path whose exact edge sum
    matches the reported cost."""
    if not result.success:
        return False
    path = result.path
    if not path or path[0] != grid.start or path[-1] != grid.goal:
        return False
    if not grid.is_free(*path[0]):
        return False
    total = ZERO_COST
    for (x0, y0), (x1, y1) in zip(path, path[1:]):
        dx, dy = abs(x1 - x0), abs(y1 - y0)
        if max(dx, dy) != 1:
            return False
        if not grid.is_free(x1, y1):
            return False
        diagonal = dx == 1 and dy == 1 and not unit_costs
        total = total + (ExactCost(0, 1) if diagonal else ExactCost(1, 0))
    return total == result.path_cost
