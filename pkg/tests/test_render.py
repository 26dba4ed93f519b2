import numpy as np
import pytest

from gridslope import ContractViolation, EuclideanHeuristic, greedy_search
from gridslope.render import EXPANDED_COLOR, PATH_COLOR, render, render_rgb

from conftest import grid_from_art


def test_empty_map_is_all_white(tmp_path, empty3x3):
    out = render(empty3x3, out=tmp_path / "plain.ppm", scale=1)
    data = out.read_bytes()
    assert data.startswith(b"P6\n3 3\n255\n")
    assert data[len(b"P6\n3 3\n255\n"):] == b"\xff" * 27


def test_rating_layer_full_green_on_region(tmp_path, empty3x3):
    d = np.zeros((3, 3))
    d[0, 0] = 1.0  # start cell
    img = render_rgb(empty3x3, rating=d)
    assert tuple(img[0, 0]) == (0, 255, 0)
    assert tuple(img[2, 2]) == (255, 255, 255)  # rating 0 stays white


def test_half_rating_is_mid_ramp(empty3x3):
    d = np.full((3, 3), 0.5)
    img = render_rgb(empty3x3, rating=d)
    assert tuple(img[1, 1]) == (128, 255, 128)


def test_obstacles_black_and_overlays(tmp_path):
    grid = grid_from_art(
        """
        .@G
        ...
        S..
        """
    )
    result = greedy_search(grid, EuclideanHeuristic())
    img = render_rgb(grid, expanded=result.expanded, path=result.path)
    assert tuple(img[2, 1]) == (0, 0, 0)  # the obstacle at (1, 2)
    x, y = result.path[1]
    assert tuple(img[y, x]) == PATH_COLOR
    expanded_only = [c for c in result.expanded if c not in result.path]
    if expanded_only:
        x, y = expanded_only[0]
        assert tuple(img[y, x]) == EXPANDED_COLOR


def test_scale_and_row_flip(tmp_path):
    grid = grid_from_art(
        """
        @.
        ..
        """,
        start=(1, 1), goal=(0, 0),
    )
    out = render(grid, out=tmp_path / "s.ppm", scale=2)
    data = out.read_bytes()
    header = b"P6\n4 4\n255\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(4, 4, 3)
    # obstacle is at (0, 1): top-left of the image after the flip
    assert (pixels[:2, :2] == 0).all()
    assert (pixels[2:, :] == 255).all()


def test_byte_deterministic(tmp_path, empty3x3):
    a = render(empty3x3, out=tmp_path / "a.ppm", scale=3).read_bytes()
    b = render(empty3x3, out=tmp_path / "b.ppm", scale=3).read_bytes()
    assert a == b


def test_dimension_mismatch_rejected(tmp_path, empty3x3):
    with pytest.raises(ContractViolation):
        render_rgb(empty3x3, rating=np.zeros((4, 4)))


def test_bad_scale(tmp_path, empty3x3):
    with pytest.raises(ContractViolation):
        render(empty3x3, out=tmp_path / "x.ppm", scale=0)
