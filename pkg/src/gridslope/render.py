"""Binary pixmap (P6) rendering of maps with optional overlays.

Obstacles are black, free cells white.  A rating layer tints free cells on a
white-to-green ramp (rating 1 = full green), expanded cells get an orange
overlay and the path a blue one.  Output bytes are a pure function of the
inputs, so images can be diffed.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ContractViolation
from .grid import GridMap

RATING_CHANNEL_MAX = 255
EXPANDED_COLOR = (235, 140, 52)
PATH_COLOR = (46, 105, 235)


def render_rgb(grid: GridMap, rating=None, expanded=None, path=None) -> np.ndarray:
    """(H, W, 3) uint8 image in map orientation (row y, col x)."""
    h, w = grid.height, grid.width
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[grid.free_mask] = 255
    if rating is not None:
        d = np.asarray(rating.d if hasattr(rating, "d") else rating, dtype=np.float64)
        if d.shape != (h, w):
            raise ContractViolation(f"rating layer shape {d.shape} != map {h}x{w}")
        d = np.clip(d, 0.0, 1.0)
        fade = np.round(255 * (1.0 - d)).astype(np.uint8)
        mask = grid.free_mask & (d > 0)
        img[mask, 0] = fade[mask]
        img[mask, 1] = RATING_CHANNEL_MAX
        img[mask, 2] = fade[mask]
    if expanded:
        for x, y in expanded:
            img[y, x] = EXPANDED_COLOR
    if path:
        for x, y in path:
            img[y, x] = PATH_COLOR
    return img


def render(grid: GridMap, rating=None, expanded=None, path=None, *,
           out, scale: int = 8) -> Path:
    """Write the map (plus overlays) as a binary P6 pixmap."""
    if scale < 1:
        raise ContractViolation("scale must be >= 1")
    img = render_rgb(grid, rating, expanded, path)
    img = img[::-1]  # row 0 of the image is the top of the map
    img = np.repeat(np.repeat(img, scale, axis=0), scale, axis=1)
    out = Path(out)
    header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    try:
        out.write_bytes(header + img.tobytes())
    except OSError as exc:
        raise ContractViolation(f"cannot write image {out}: {exc}") from None
    return out
