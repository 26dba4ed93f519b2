"""Procedural generators for the 8 obstacle worlds and train/val/test splits.

Every generator is a pure function of (seed, attempt): maps regenerate
bit-identically, and unsolvable draws are retried with a bumped attempt
counter rather than repaired.  Start and goal sit on the lower-left and
upper-right corners, which are cleared before the reachability check.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .errors import ContractViolation, GenerationError
from .grid import GridMap

WORLD_TYPES = (
    "alternating_gaps",
    "shifting_gaps",
    "single_bugtrap",
    "forest",
    "bugtrap_forest",
    "gaps_forest",
    "maze",
    "multiple_bugtraps",
)

DEFAULT_RETRIES = 50
DEFAULT_SPLIT_COUNTS = (320, 80, 100)


@dataclass
class WorldSpec:
    world_type: str
    width: int = 32
    height: int = 32
    seed: int = 0
    params: dict = field(default_factory=dict)
    retries: int = DEFAULT_RETRIES


def solvable(free: np.ndarray, start, goal) -> bool:
    """8-connected reachability between two cells."""
    sources = np.zeros(free.shape, dtype=bool)
    sources[start[1], start[0]] = True
    steps = kernels.bfs_steps(free, sources)
    return steps[goal[1], goal[0]] >= 0


def generate(spec: WorldSpec, map_id: str | None = None) -> GridMap:
    """Build one solvable map for the spec (deterministic in spec.seed)."""
    if spec.world_type not in WORLD_TYPES:
        raise ContractViolation(f"unknown world type {spec.world_type!r}")
    if spec.width < 8 or spec.height < 8:
        raise ContractViolation("generated worlds must be at least 8x8")
    builder = _BUILDERS[spec.world_type]
    start = (0, 0)
    goal = (spec.width - 1, spec.height - 1)
    for attempt in range(spec.retries):
        rng = np.random.default_rng([spec.seed, attempt])
        free = builder(rng, spec.width, spec.height, spec.params)
        free[start[1], start[0]] = True
        free[goal[1], goal[0]] = True
        if solvable(free, start, goal):
            mid = map_id if map_id is not None else f"{spec.world_type}_{spec.seed:04d}"
            return GridMap(free, start, goal, map_id=mid)
    raise GenerationError(
        f"no solvable {spec.world_type} map after {spec.retries} attempts (seed {spec.seed})",
        spec=spec,
    )


def generate_split(spec_family: WorldSpec, counts=DEFAULT_SPLIT_COUNTS, seed_base: int = 0):
    """Train/val/test map lists with disjoint seed ranges (0.., then on)."""
    n_train, n_val, n_test = counts
    if min(counts) <= 0:
        raise ContractViolation("split counts must be positive")
    out = []
    offset = 0
    for split, count in (("train", n_train), ("val", n_val), ("test", n_test)):
        maps = []
        for i in range(count):
            seed = seed_base + offset + i
            spec = replace(spec_family, seed=seed)
            maps.append(generate(spec, map_id=f"{spec.world_type}_{split}_{seed:04d}"))
        out.append(maps)
        offset += count
    return tuple(out)


# ---------------------------------------------------------------------------
# builders (free = True)
# ---------------------------------------------------------------------------

def _forest(rng, w, h, params):
    p = float(params.get("density", 0.2))
    return rng.random((h, w)) >= p


def _wall_columns(w, count):
    return [int(round((i + 1) * w / (count + 1))) for i in range(count)]


def _stamp_gap_walls(free, rng, w, h, params, alternating):
    count = int(params.get("walls", 4))
    gap = int(params.get("gap_height", 4))
    gap = max(2, min(gap, h - 2))
    for i, x in enumerate(_wall_columns(w, count)):
        free[:, x] = False
        if alternating:
            jitter = int(rng.integers(0, 3))
            if i % 2 == 0:
                y0 = min(1 + jitter, h - gap)
            else:
                y0 = max(0, h - 1 - gap - jitter)
        else:
            y0 = int(rng.integers(0, h - gap + 1))
        free[y0:y0 + gap, x] = True
    return free


def _alternating_gaps(rng, w, h, params):
    return _stamp_gap_walls(np.ones((h, w), dtype=bool), rng, w, h, params, alternating=True)


def _shifting_gaps(rng, w, h, params):
    return _stamp_gap_walls(np.ones((h, w), dtype=bool), rng, w, h, params, alternating=False)


def _stamp_ctrap(free, rng, cx, cy, tw, th, opening):
    """Axis-aligned C-shaped ring: 1-cell walls with one side opened."""
    h, w = free.shape
    x0 = max(1, cx - tw // 2)
    x1 = min(w - 2, x0 + tw - 1)
    y0 = max(1, cy - th // 2)
    y1 = min(h - 2, y0 + th - 1)
    if x1 - x0 < 3 or y1 - y0 < 3:
        return
    free[y0, x0:x1 + 1] = False
    free[y1, x0:x1 + 1] = False
    free[y0:y1 + 1, x0] = False
    free[y0:y1 + 1, x1] = False
    if opening in ("bottom", "top"):
        span = x1 - x0 - 1
        ow = max(2, span // 2)
        mid = (x0 + x1) // 2
        o0 = max(x0 + 1, mid - ow // 2)
        row = y0 if opening == "bottom" else y1
        free[row, o0:min(o0 + ow, x1)] = True
    else:
        span = y1 - y0 - 1
        ow = max(2, span // 2)
        mid = (y0 + y1) // 2
        o0 = max(y0 + 1, mid - ow // 2)
        col = x1 if opening == "right" else x0
        free[max(y0 + 1, o0):min(o0 + ow, y1), col] = True


def _single_bugtrap(rng, w, h, params, base=None):
    free = np.ones((h, w), dtype=bool) if base is None else base
    tw = max(6, int(w * rng.uniform(0.3, 0.45)))
    th = max(6, int(h * rng.uniform(0.25, 0.4)))
    cx = w // 2 + int(rng.integers(-2, 3))
    cy = h // 2 + int(rng.integers(-2, 3))
    # opening into the lower-right half plane, i.e. away from the corner diagonal
    opening = ("bottom", "right")[int(rng.integers(0, 2))]
    _stamp_ctrap(free, rng, cx, cy, tw, th, opening)
    return free


def _multiple_bugtraps(rng, w, h, params):
    free = np.ones((h, w), dtype=bool)
    count = int(rng.integers(3, 6))
    sides = ("bottom", "top", "left", "right")
    for _ in range(count):
        tw = max(5, int(w * rng.uniform(0.15, 0.3)))
        th = max(5, int(h * rng.uniform(0.15, 0.3)))
        cx = int(rng.integers(tw // 2 + 1, w - tw // 2 - 1))
        cy = int(rng.integers(th // 2 + 1, h - th // 2 - 1))
        _stamp_ctrap(free, rng, cx, cy, tw, th, sides[int(rng.integers(0, 4))])
    return free


def _maze(rng, w, h, params):
    """Recursive division on a period-3 lattice: 2-cell corridors, 1-cell walls."""
    free = np.ones((h, w), dtype=bool)

    def wall_lines(lo, hi):
        return [c for c in range(lo + 2, hi - 1) if c % 3 == 2]

    def door_slots(lo, hi):
        return [c for c in range(lo, hi) if c % 3 == 0]

    def divide(x0, y0, x1, y1):
        vx = wall_lines(x0, x1)
        hy = wall_lines(y0, y1)
        if not vx and not hy:
            return
        if vx and hy:
            vertical = (x1 - x0 > y1 - y0) or (x1 - x0 == y1 - y0 and rng.integers(0, 2) == 0)
        else:
            vertical = bool(vx)
        if vertical:
            doors = door_slots(y0, y1)
            if not doors:
                return
            wx = vx[int(rng.integers(0, len(vx)))]
            free[y0:y1 + 1, wx] = False
            gy = doors[int(rng.integers(0, len(doors)))]
            free[gy:gy + 2, wx] = True
            divide(x0, y0, wx - 1, y1)
            divide(wx + 1, y0, x1, y1)
        else:
            doors = door_slots(x0, x1)
            if not doors:
                return
            wy = hy[int(rng.integers(0, len(hy)))]
            free[wy, x0:x1 + 1] = False
            gx = doors[int(rng.integers(0, len(doors)))]
            free[wy, gx:gx + 2] = True
            divide(x0, y0, x1, wy - 1)
            divide(x0, wy + 1, x1, y1)

    divide(0, 0, w - 1, h - 1)
    return free


def _bugtrap_forest(rng, w, h, params):
    base = _forest(rng, w, h, {"density": float(params.get("density", 0.1))})
    return _single_bugtrap(rng, w, h, params, base=base)


def _gaps_forest(rng, w, h, params):
    base = _forest(rng, w, h, {"density": float(params.get("density", 0.1))})
    return _stamp_gap_walls(base, rng, w, h, params, alternating=True)


_BUILDERS = {
    "forest": _forest,
    "alternating_gaps": _alternating_gaps,
    "shifting_gaps": _shifting_gaps,
    "single_bugtrap": _single_bugtrap,
    "multiple_bugtraps": _multiple_bugtraps,
    "maze": _maze,
    "bugtrap_forest": _bugtrap_forest,
    "gaps_forest": _gaps_forest,
}
