"""Hot per-map field kernels: exact Dijkstra cost fields and multi-source BFS.

Two interchangeable backends produce bit-identical arrays:

* ``numba`` (default when importable): @njit kernels with an array-backed
  binary heap, fastest for benchmark sweeps over hundreds of maps.
* ``numpy``: vectorized relaxation sweeps, used as the fallback.

Set ``GRIDSLOPE_DISABLE_NUMBA=1`` to force the numpy path.  ``BACKEND``
reports which one is live; ``benchmarks/kernel_bench.py`` times both.

Costs are integer pairs (cardinal, diagonal) = a + b*sqrt(2); comparisons
use integer arithmetic only (see grid.compare_pair). INF marks unreachable.
"""

from __future__ import annotations

import os

import numpy as np

INF = np.int64(1) << 40

_NEIGHBOR_DX = np.array([1, -1, 0, 0, 1, -1, -1, 1], dtype=np.int64)
_NEIGHBOR_DY = np.array([0, 0, 1, -1, 1, 1, -1, -1], dtype=np.int64)
_NEIGHBOR_DIAG = np.array([0, 0, 0, 0, 1, 1, 1, 1], dtype=np.int64)

_DISABLE_ENV = "GRIDSLOPE_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_DISABLE_ENV, "").strip() not in ("", "0")


# ---------------------------------------------------------------------------
# vectorized exact comparison
# ---------------------------------------------------------------------------

def pair_less_arrays(c1, d1, c2, d2):
    """Elementwise exact test c1 + d1*sqrt(2) < c2 + d2*sqrt(2) on int64 arrays."""
    dc = c1 - c2
    dd = d1 - d2
    both_down = (dc <= 0) & (dd <= 0) & ((dc < 0) | (dd < 0))
    # mixed-sign squares can only involve finite deltas: INF labels move in
    # lockstep on both components, so the masks below are False there
    card_down = (dc < 0) & (dd > 0) & (dc * dc > 2 * dd * dd)
    diag_down = (dc > 0) & (dd < 0) & (dc * dc < 2 * dd * dd)
    return both_down | card_down | diag_down


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def _shifted(a: np.ndarray, dx: int, dy: int, fill) -> np.ndarray:
    """out[y, x] = a[y - dy, x - dx], padded with ``fill``."""
    h, w = a.shape
    out = np.full_like(a, fill)
    out[max(0, dy):min(h, h + dy), max(0, dx):min(w, w + dx)] = \
        a[max(0, -dy):min(h, h - dy), max(0, -dx):min(w, w - dx)]
    return out


def dijkstra_field_numpy(free: np.ndarray, sx: int, sy: int, unit_costs: bool = False):
    """Exact shortest-path cost pair from (sx, sy) to every free cell.

    Relaxes all 8 move directions to a fixpoint; sweep count is bounded by
    the longest shortest path, so this stays vectorized and exact.
    """
    card = np.full(free.shape, INF, dtype=np.int64)
    diag = np.full(free.shape, INF, dtype=np.int64)
    card[sy, sx] = 0
    diag[sy, sx] = 0
    obstacles = ~free
    while True:
        changed = False
        for dx, dy, dg in zip(_NEIGHBOR_DX, _NEIGHBOR_DY, _NEIGHBOR_DIAG):
            step_c = 1 if (dg == 0 or unit_costs) else 0
            step_d = 0 if (dg == 0 or unit_costs) else 1
            cand_c = _shifted(card, int(dx), int(dy), INF) + step_c
            cand_d = _shifted(diag, int(dx), int(dy), INF) + step_d
            better = pair_less_arrays(cand_c, cand_d, card, diag)
            better &= free
            if better.any():
                card[better] = cand_c[better]
                diag[better] = cand_d[better]
                changed = True
        if not changed:
            break
    card[obstacles] = INF
    diag[obstacles] = INF
    return card, diag


def bfs_steps_numpy(free: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """8-connected BFS step count from the nearest source over free cells.

    Returns int32 distances, -1 where unreachable (or obstacle). Implemented
    as repeated masked dilation: ring j+1 = neighbors of ring j.
    """
    k = np.full(free.shape, -1, dtype=np.int32)
    frontier = sources & free
    k[frontier] = 0
    step = 0
    while frontier.any():
        grown = np.zeros_like(frontier)
        for dx, dy in zip(_NEIGHBOR_DX, _NEIGHBOR_DY):
            grown |= _shifted(frontier, int(dx), int(dy), False)
        frontier = grown & free & (k < 0)
        step += 1
        k[frontier] = step
    return k


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

_HAVE_NUMBA = False
if not _numba_disabled():
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False

if _HAVE_NUMBA:

    @njit(cache=True)
    def _pair_less(c1, d1, c2, d2):
        dc = c1 - c2
        dd = d1 - d2
        if dc == 0 and dd == 0:
            return False
        if dc <= 0 and dd <= 0:
            return True
        if dc >= 0 and dd >= 0:
            return False
        if dc < 0:  # dd > 0
            return dc * dc > 2 * dd * dd
        return dc * dc < 2 * dd * dd

    @njit(cache=True)
    def _dijkstra_field_numba(free, sx, sy, unit_costs):
        h, w = free.shape
        n = h * w
        card = np.full(n, INF, dtype=np.int64)
        diag = np.full(n, INF, dtype=np.int64)
        done = np.zeros(n, dtype=np.bool_)
        # binary heap over parallel arrays; relaxations push duplicates and
        # stale entries are skipped on pop, so capacity 8n+8 always suffices
        cap = 8 * n + 8
        heap_c = np.empty(cap, dtype=np.int64)
        heap_d = np.empty(cap, dtype=np.int64)
        heap_cell = np.empty(cap, dtype=np.int64)
        size = 0

        src = sy * w + sx
        card[src] = 0
        diag[src] = 0
        heap_c[0] = 0
        heap_d[0] = 0
        heap_cell[0] = src
        size = 1

        dxs = (1, -1, 0, 0, 1, -1, -1, 1)
        dys = (0, 0, 1, -1, 1, 1, -1, -1)

        while size > 0:
            top_c = heap_c[0]
            top_d = heap_d[0]
            cell = heap_cell[0]
            size -= 1
            # sift the tail element down from the root
            tc = heap_c[size]
            td = heap_d[size]
            tcell = heap_cell[size]
            pos = 0
            while True:
                left = 2 * pos + 1
                if left >= size:
                    break
                right = left + 1
                best = left
                if right < size and _pair_less(heap_c[right], heap_d[right], heap_c[left], heap_d[left]):
                    best = right
                if _pair_less(heap_c[best], heap_d[best], tc, td):
                    heap_c[pos] = heap_c[best]
                    heap_d[pos] = heap_d[best]
                    heap_cell[pos] = heap_cell[best]
                    pos = best
                else:
                    break
            if size > 0:
                heap_c[pos] = tc
                heap_d[pos] = td
                heap_cell[pos] = tcell

            if done[cell]:
                continue
            done[cell] = True
            x = cell % w
            y = cell // w
            for i in range(8):
                nx = x + dxs[i]
                ny = y + dys[i]
                if nx < 0 or nx >= w or ny < 0 or ny >= h:
                    continue
                if not free[ny, nx]:
                    continue
                nb = ny * w + nx
                if done[nb]:
                    continue
                if i >= 4 and not unit_costs:
                    nc = top_c
                    nd = top_d + 1
                else:
                    nc = top_c + 1
                    nd = top_d
                if _pair_less(nc, nd, card[nb], diag[nb]):
                    card[nb] = nc
                    diag[nb] = nd
                    # sift up from the end
                    pos = size
                    heap_c[pos] = nc
                    heap_d[pos] = nd
                    heap_cell[pos] = nb
                    size += 1
                    while pos > 0:
                        parent = (pos - 1) // 2
                        if _pair_less(heap_c[pos], heap_d[pos], heap_c[parent], heap_d[parent]):
                            heap_c[pos], heap_c[parent] = heap_c[parent], heap_c[pos]
                            heap_d[pos], heap_d[parent] = heap_d[parent], heap_d[pos]
                            heap_cell[pos], heap_cell[parent] = heap_cell[parent], heap_cell[pos]
                            pos = parent
                        else:
                            break
        return card.reshape(h, w), diag.reshape(h, w)

    @njit(cache=True)
    def _bfs_steps_numba(free, sources):
        h, w = free.shape
        n = h * w
        k = np.full(n, -1, dtype=np.int32)
        queue = np.empty(n, dtype=np.int64)
        head = 0
        tail = 0
        for y in range(h):
            for x in range(w):
                if sources[y, x] and free[y, x]:
                    cell = y * w + x
                    k[cell] = 0
                    queue[tail] = cell
                    tail += 1
        dxs = (1, -1, 0, 0, 1, -1, -1, 1)
        dys = (0, 0, 1, -1, 1, 1, -1, -1)
        while head < tail:
            cell = queue[head]
            head += 1
            x = cell % w
            y = cell // w
            dist = k[cell]
            for i in range(8):
                nx = x + dxs[i]
                ny = y + dys[i]
                if nx < 0 or nx >= w or ny < 0 or ny >= h:
                    continue
                if not free[ny, nx]:
                    continue
                nb = ny * w + nx
                if k[nb] < 0:
                    k[nb] = dist + 1
                    queue[tail] = nb
                    tail += 1
        return k.reshape(h, w)

    def dijkstra_field_numba(free, sx, sy, unit_costs=False):
        return _dijkstra_field_numba(np.ascontiguousarray(free), sx, sy, unit_costs)

    def bfs_steps_numba(free, sources):
        return _bfs_steps_numba(np.ascontiguousarray(free), np.ascontiguousarray(sources))


BACKEND = "numba" if _HAVE_NUMBA else "numpy"


def dijkstra_field(free: np.ndarray, sx: int, sy: int, unit_costs: bool = False):
    """Backend-dispatched exact cost field (cardinal, diagonal) int64 arrays."""
    if _HAVE_NUMBA:
        return dijkstra_field_numba(free, sx, sy, unit_costs)
    return dijkstra_field_numpy(free, sx, sy, unit_costs)


def bfs_steps(free: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Backend-dispatched multi-source BFS step distances (-1 unreachable)."""
    if _HAVE_NUMBA:
        return bfs_steps_numba(free, sources)
    return bfs_steps_numpy(free, sources)
