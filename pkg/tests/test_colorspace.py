import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spgtex.colorspace import HsiImage, RgbImage, convert_image, rgb_to_hsi_pixel

component = st.integers(min_value=0, max_value=255)


def test_pixel_white_is_achromatic():
    assert rgb_to_hsi_pixel(255, 255, 255) == (0, 0, 255)


def test_pixel_black_degenerate():
    assert rgb_to_hsi_pixel(0, 0, 0) == (0, 0, 0)


def test_pixel_pure_red():
    # hand evaluation: theta = arccos(1) = 0, S = 1 - 0 = 1, I = 255/3 = 85
    assert rgb_to_hsi_pixel(255, 0, 0) == (0, 255, 85)


def test_pixel_rejects_out_of_range():
    with pytest.raises(ValueError):
        rgb_to_hsi_pixel(-1, 0, 0)
    with pytest.raises(ValueError):
        rgb_to_hsi_pixel(0, 256, 0)


@given(v=component)
def test_gray_pixels_collapse_to_intensity(v):
    assert rgb_to_hsi_pixel(v, v, v) == (0, 0, v)


@given(r=component, g=component, b=component)
@settings(max_examples=300)
def test_components_stay_in_range(r, g, b):
    h, s, i = rgb_to_hsi_pixel(r, g, b)
    for value in (h, s, i):
        assert 0 <= value <= 255


@given(r=component, g=component, b=component)
@settings(max_examples=200)
def test_intensity_is_rounded_mean(r, g, b):
    _, _, i = rgb_to_hsi_pixel(r, g, b)
    assert i == int(np.floor((r + g + b) / 3.0 + 0.5))


def test_convert_single_white_pixel():
    img = RgbImage(np.array([[[255, 255, 255]]], dtype=np.uint8))
    out = convert_image(img)
    assert out.h.tolist() == [[0]]
    assert out.s.tolist() == [[0]]
    assert out.i.tolist() == [[255]]


def test_convert_two_pixel_row():
    img = RgbImage(np.array([[[0, 0, 0], [255, 0, 0]]], dtype=np.uint8))
    out = convert_image(img)
    assert out.h.tolist() == [[0, 0]]
    assert out.s.tolist() == [[0, 255]]
    assert out.i.tolist() == [[0, 85]]


def test_convert_matches_pixel_op():
    rng = np.random.default_rng(42)
    pixels = rng.integers(0, 256, size=(13, 9, 3)).astype(np.uint8)
    out = convert_image(RgbImage(pixels))
    for row in range(13):
        for col in range(9):
            r, g, b = (int(c) for c in pixels[row, col])
            assert (out.h[row, col], out.s[row, col], out.i[row, col]) == rgb_to_hsi_pixel(r, g, b)


def test_convert_is_deterministic():
    rng = np.random.default_rng(7)
    pixels = rng.integers(0, 256, size=(16, 16, 3)).astype(np.uint8)
    first = convert_image(RgbImage(pixels.copy()))
    second = convert_image(RgbImage(pixels.copy()))
    assert np.array_equal(first.h, second.h)
    assert np.array_equal(first.s, second.s)
    assert np.array_equal(first.i, second.i)


def test_rgb_image_validation():
    with pytest.raises(ValueError):
        RgbImage(np.zeros((4, 4), dtype=np.uint8))  # missing channel axis
    with pytest.raises(ValueError):
        RgbImage(np.zeros((0, 4, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        RgbImage(np.full((2, 2, 3), 300, dtype=np.int32))
    with pytest.raises(ValueError):
        RgbImage(np.zeros((2, 2, 3), dtype=np.float64))
    img = RgbImage(np.zeros((2, 3, 3), dtype=np.int64))  # in-range ints are accepted
    assert img.pixels.dtype == np.uint8
    assert (img.width, img.height) == (3, 2)


def test_hsi_image_validation():
    plane = np.zeros((4, 4), dtype=np.uint8)
    with pytest.raises(ValueError):
        HsiImage(h=plane, s=plane, i=np.zeros((4, 5), dtype=np.uint8))
    with pytest.raises(ValueError):
        HsiImage(h=plane, s=plane, i=np.full((4, 4), 999, dtype=np.int32))
    img = HsiImage(h=plane, s=plane, i=plane)
    assert img.plane("S") is img.s
