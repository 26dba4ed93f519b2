"""Text file formats: maps, rating / cost-value grids, dataset CSV, config.

Map files follow the common octile benchmark layout: ``type octile``,
``height H``, ``width W``, ``map``, then H rows of ``.`` (free) and ``@``
(obstacle).  Row 0 of the file is the TOP of the map (y = H - 1).  Optional
trailing ``start X Y`` / ``goal X Y`` lines override the corner defaults.

Grid value files share one grammar: ``height``, ``width``, ``m``, ``source``
headers, then H rows (top first) of W space-separated values with 4 decimal
places.  ``source`` distinguishes ground_truth / learned ratings from
unbounded ``hvalue`` cost fields.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ConfigError, ContractViolation
from .grid import GridMap, default_corners
from .oracle import DatasetSample, RatingGrid

GRID_SOURCES = ("ground_truth", "learned", "hvalue")
DATASET_HEADER = "map_id,x,y,rating"


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

def write_map(grid: GridMap, path) -> Path:
    path = Path(path)
    rows = []
    for y in range(grid.height - 1, -1, -1):
        rows.append("".join("." if grid.free_mask[y, x] else "@" for x in range(grid.width)))
    lines = [
        "type octile",
        f"height {grid.height}",
        f"width {grid.width}",
        "map",
        *rows,
        f"start {grid.start[0]} {grid.start[1]}",
        f"goal {grid.goal[0]} {grid.goal[1]}",
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_map(path) -> GridMap:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"map file not found: {path}")
    lines = [ln.rstrip("\r\n") for ln in path.read_text().splitlines()]
    try:
        header = {
            "type": lines[0].split()[1],
            "height": int(lines[1].split()[1]),
            "width": int(lines[2].split()[1]),
        }
        if lines[0].split()[0] != "type" or lines[3].strip() != "map":
            raise ValueError
    except (IndexError, ValueError):
        raise ConfigError(f"bad map header in {path}") from None
    height, width = header["height"], header["width"]
    rows = lines[4:4 + height]
    if len(rows) < height:
        raise ConfigError(f"map {path} truncated: expected {height} rows")
    free = np.zeros((height, width), dtype=bool)
    for file_row, row in enumerate(rows):
        if len(row) < width:
            raise ConfigError(f"map {path} row {file_row} shorter than width {width}")
        y = height - 1 - file_row
        for x, ch in enumerate(row[:width]):
            if ch == ".":
                free[y, x] = True
            elif ch != "@":
                raise ConfigError(f"map {path} has unknown cell char {ch!r}")
    start, goal = default_corners(free)
    for extra in lines[4 + height:]:
        parts = extra.split()
        if not parts:
            continue
        if parts[0] == "start":
            start = (int(parts[1]), int(parts[2]))
        elif parts[0] == "goal":
            goal = (int(parts[1]), int(parts[2]))
        else:
            raise ConfigError(f"map {path} has unknown trailing line {extra!r}")
    return GridMap(free, start, goal, map_id=path.stem)


# ---------------------------------------------------------------------------
# value grids (ratings and h fields)
# ---------------------------------------------------------------------------

def _write_grid(values: np.ndarray, m: int, source: str, path) -> Path:
    if source not in GRID_SOURCES:
        raise ContractViolation(f"unknown grid source {source!r}")
    path = Path(path)
    height, width = values.shape
    lines = [f"height {height}", f"width {width}", f"m {m}", f"source {source}"]
    for y in range(height - 1, -1, -1):
        lines.append(" ".join(f"{values[y, x]:.4f}" for x in range(width)))
    path.write_text("\n".join(lines) + "\n")
    return path


def _read_grid(path):
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"grid file not found: {path}")
    lines = path.read_text().splitlines()
    try:
        height = int(lines[0].split()[1])
        width = int(lines[1].split()[1])
        m = int(lines[2].split()[1])
        source = lines[3].split()[1]
    except (IndexError, ValueError):
        raise ConfigError(f"bad grid header in {path}") from None
    if source not in GRID_SOURCES:
        raise ConfigError(f"grid {path} has unknown source {source!r}")
    values = np.empty((height, width), dtype=np.float64)
    rows = lines[4:4 + height]
    if len(rows) < height:
        raise ConfigError(f"grid {path} truncated")
    for file_row, row in enumerate(rows):
        parts = row.split()
        if len(parts) != width:
            raise ConfigError(f"grid {path} row {file_row} has {len(parts)} values, want {width}")
        values[height - 1 - file_row, :] = [float(v) for v in parts]
    return values, m, source


def write_rating_grid(rating: RatingGrid, path) -> Path:
    return _write_grid(rating.d, rating.m, rating.source, path)


def read_rating_grid(path) -> RatingGrid:
    values, m, source = _read_grid(path)
    if source == "hvalue":
        raise ConfigError(f"{path} holds cost values, not ratings")
    if values.min() < 0.0 or values.max() > 1.0:
        raise ConfigError(f"rating grid {path} has values outside [0, 1]")
    return RatingGrid(d=values, m=m, source=source, map_id=Path(path).stem)


def write_h_grid(values: np.ndarray, path) -> Path:
    return _write_grid(np.asarray(values, dtype=np.float64), 0, "hvalue", path)


def read_h_grid(path) -> np.ndarray:
    values, _, source = _read_grid(path)
    if source != "hvalue":
        raise ConfigError(f"{path} holds ratings, not cost values")
    return values


# ---------------------------------------------------------------------------
# dataset export
# ---------------------------------------------------------------------------

def write_dataset_csv(samples, path) -> Path:
    path = Path(path)
    lines = [DATASET_HEADER]
    lines.extend(f"{s.map_id},{s.x},{s.y},{s.rating:.4f}" for s in samples)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_dataset_csv(path):
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"dataset file not found: {path}")
    lines = path.read_text().splitlines()
    if not lines or lines[0] != DATASET_HEADER:
        raise ConfigError(f"bad dataset header in {path}")
    samples = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        map_id, x, y, rating = ln.split(",")
        samples.append(DatasetSample(map_id, int(x), int(y), float(rating)))
    return samples


# ---------------------------------------------------------------------------
# manifest and flat config
# ---------------------------------------------------------------------------

def write_manifest(path, world: str, width: int, height: int, params: dict, entries) -> Path:
    path = Path(path)
    payload = {
        "world": world,
        "width": width,
        "height": height,
        "params": params,
        "entries": entries,  # [{id, split, seed, file}]
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def read_manifest(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"manifest not found: {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad manifest {path}: {exc}") from None


def read_config(path) -> dict:
    """Flat ``key = value`` config with # comments."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    out = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
