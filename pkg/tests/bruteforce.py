"""Independent test oracles: exhaustive relaxation and path enumeration.

These deliberately avoid the production kernels (priority-queue Dijkstra /
vectorized sweeps): fields come from stack-based label-correcting relaxation
that re-examines every improving path prefix, and region membership comes
from enumerating complete optimal paths.
"""

from gridslope import ExactCost, ZERO_COST, expand
from gridslope.grid import GridMap


def bf_cost_field(grid: GridMap, source) -> dict:
    """Exact shortest-path costs from ``source`` to every reachable cell."""
    best = {tuple(source): ZERO_COST}
    stack = [tuple(source)]
    while stack:
        cell = stack.pop()
        base = best[cell]
        for child, step in expand(grid, cell):
            cand = base + step
            known = best.get(child)
            if known is None or cand < known:
                best[child] = cand
                stack.append(child)
    return best


def enumerate_simple_paths(grid: GridMap, a, b):
    """Every simple path a -> b with its exact cost (tiny maps only)."""
    paths = []

    def walk(cell, cost, path, visited):
        if cell == b:
            paths.append((list(path), cost))
            return
        for child, step in expand(grid, cell):
            if child in visited:
                continue
            visited.add(child)
            path.append(child)
            walk(child, cost + step, path, visited)
            path.pop()
            visited.remove(child)

    walk(tuple(a), ZERO_COST, [tuple(a)], {tuple(a)})
    return paths


def octile_lower_bound(a, b) -> ExactCost:
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    return ExactCost(max(dx, dy) - min(dx, dy), min(dx, dy))


def optimal_path_cells(grid: GridMap) -> set:
    """Union of cells on minimum-cost start->goal paths, by bounded enumeration.

    Prefixes are pruned exactly: a partial path survives iff its cost plus the
    octile lower bound to the goal still equals a possible optimum.
    """
    field = bf_cost_field(grid, grid.start)
    c_star = field.get(grid.goal)
    if c_star is None:
        return set()
    cells = set()

    def walk(cell, cost, path):
        if cost + octile_lower_bound(cell, grid.goal) > c_star:
            return
        if cell == grid.goal:
            if cost == c_star:
                cells.update(path)
            return
        for child, step in expand(grid, cell):
            if child in path:
                continue
            path.append(child)
            walk(child, cost + step, path)
            path.pop()

    walk(grid.start, ZERO_COST, [grid.start])
    return cells
