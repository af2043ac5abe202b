"""RGB to quantized HSI conversion.

All three output channels are quantized to integers in [0, 255] so that
hue, saturation and intensity weights are commensurable in the pixel
graphs built downstream. The conversion is the classical geometric HSI
model:

    I = (R + G + B) / 3
    S = 1 - 3 * min(R, G, B) / (R + G + B)        (0 for black)
    H = hue angle in [0, 360) from the arccos form (0 when S = 0)

followed by linear scaling of H (from degrees) and S (from [0, 1]) to
[0, 255], rounding half-up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

INTENSITY_LEVELS = 255


def _round_half_up(x: np.ndarray) -> np.ndarray:
    # np.round rounds half-to-even; the quantization contract is half-up.
    return np.floor(x + 0.5)


def _hsi_planes(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Core conversion on a float64 (..., 3) array of RGB values in [0, 255]."""
    r = rgb[..., 0]
    g = rgb[..., 1]
    b = rgb[..., 2]

    total = r + g + b
    intensity = total / 3.0

    min_c = np.minimum(np.minimum(r, g), b)
    with np.errstate(invalid="ignore", divide="ignore"):
        saturation = np.where(total > 0.0, 1.0 - 3.0 * min_c / total, 0.0)

    # (r-g)^2 + (r-b)(g-b) = ((r-g)^2 + (r-b)^2 + (g-b)^2) / 2 >= 0,
    # zero exactly for gray pixels, where hue is undefined and pinned to 0.
    num = 0.5 * ((r - g) + (r - b))
    den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
    gray = den == 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_angle = np.clip(np.where(gray, 1.0, num / np.where(gray, 1.0, den)), -1.0, 1.0)
    theta = np.degrees(np.arccos(cos_angle))
    hue = np.where(b > g, 360.0 - theta, theta)
    hue = np.where(gray, 0.0, hue)

    h8 = _round_half_up(hue / 360.0 * INTENSITY_LEVELS)
    s8 = _round_half_up(saturation * INTENSITY_LEVELS)
    i8 = _round_half_up(intensity)
    return (h8.astype(np.uint8), s8.astype(np.uint8), i8.astype(np.uint8))


def rgb_to_hsi_pixel(r: int, g: int, b: int) -> tuple[int, int, int]:
    """Convert one RGB pixel (components in [0, 255]) to quantized (h, s, i).

    Total function on the valid range; gray pixels map to (0, 0, value).
    """
    for name, v in (("r", r), ("g", g), ("b", b)):
        if not 0 <= v <= 255:
            raise ValueError(f"{name} component {v} outside [0, 255]")
    px = np.array([[r, g, b]], dtype=np.float64)
    h8, s8, i8 = _hsi_planes(px)
    return (int(h8[0]), int(s8[0]), int(i8[0]))


@dataclass
class RgbImage:
    """Decoded RGB raster: (height, width, 3) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (height, width, 3) pixel array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if arr.dtype != np.uint8:
            if np.issubdtype(arr.dtype, np.floating):
                raise ValueError("pixel components must be integers in [0, 255]")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel components outside [0, 255]")
            arr = arr.astype(np.uint8)
        self.pixels = arr

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass
class HsiImage:
    """Quantized HSI channel planes, each (height, width) uint8."""

    h: np.ndarray
    s: np.ndarray
    i: np.ndarray

    def __post_init__(self):
        planes = []
        for name in ("h", "s", "i"):
            arr = np.asarray(getattr(self, name))
            if arr.ndim != 2:
                raise ValueError(f"{name} plane must be 2-d, got shape {arr.shape}")
            if arr.dtype != np.uint8:
                if np.issubdtype(arr.dtype, np.floating):
                    raise ValueError(f"{name} plane must hold integers in [0, 255]")
                if arr.size and (arr.min() < 0 or arr.max() > 255):
                    raise ValueError(f"{name} plane values outside [0, 255]")
                arr = arr.astype(np.uint8)
            planes.append(arr)
        if not (planes[0].shape == planes[1].shape == planes[2].shape):
            raise ValueError(
                f"plane shapes differ: h={planes[0].shape} s={planes[1].shape} i={planes[2].shape}"
            )
        if planes[0].shape[0] < 1 or planes[0].shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        self.h, self.s, self.i = planes

    @property
    def height(self) -> int:
        return self.h.shape[0]

    @property
    def width(self) -> int:
        return self.h.shape[1]

    def plane(self, channel: str) -> np.ndarray:
        return {"H": self.h, "S": self.s, "I": self.i}[channel]


def convert_image(img: RgbImage) -> HsiImage:
    """Per-pixel HSI conversion of a whole image (vectorized)."""
    h8, s8, i8 = _hsi_planes(img.pixels.astype(np.float64))
    return HsiImage(h=h8, s=s8, i=i8)
