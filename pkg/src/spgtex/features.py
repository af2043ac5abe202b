"""Grid covering and shortest-path descriptor extraction.

An N x N image is covered by an r x r grid of non-overlapping blocks of
side b = N / r. Each block contributes twelve shortest-path costs: four
directions on the hue graph and four per endpoint channel on the coupled
saturation/intensity graph. Pooling the per-block costs over the whole
grid gives, per channel, the 8-vector

    [mu_0, sigma_0, mu_45, sigma_45, mu_-45, sigma_-45, mu_90, sigma_90]

and the per-scale descriptor is the 24-vector concatenation over the
channel order (H, S, I). Multi-scale descriptors concatenate per-scale
vectors in the order the scales are given. Sigma is the population
standard deviation over the r^2 blocks.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .colorspace import HsiImage
from .errors import ConfigError
from .graphmodel import CHANNELS, Block
from .pathengine import DIRECTIONS, endpoint_table

# Values per (scale, channel): (mu, sigma) for each of the four directions.
VALUES_PER_CHANNEL = 8
VALUES_PER_SCALE = VALUES_PER_CHANNEL * len(CHANNELS)

ScaleSpec = Sequence[int]


def validate_grid(img: HsiImage, r: int) -> int:
    """Check that ``r`` tiles the image; returns the block side."""
    if img.width != img.height:
        raise ConfigError(
            f"image is {img.width}x{img.height}; grid covering requires a square image"
        )
    if r < 1:
        raise ConfigError(f"grid count must be >= 1, got {r}")
    if img.width % r != 0:
        raise ConfigError(f"grid count {r} does not divide image side {img.width}")
    return img.width // r


def validate_scales(img: HsiImage, scales: ScaleSpec) -> tuple[int, ...]:
    if not scales:
        raise ConfigError("scale list is empty")
    for r in scales:
        validate_grid(img, r)
    return tuple(scales)


def partition_blocks(img: HsiImage, r: int) -> list[Block]:
    """Tile the image into r^2 blocks of side N/r, row-major."""
    b = validate_grid(img, r)
    blocks = []
    for br in range(r):
        for bc in range(r):
            r0, c0 = br * b, bc * b
            blocks.append(
                Block(
                    origin=(r0, c0),
                    side=b,
                    h=img.h[r0 : r0 + b, c0 : c0 + b],
                    s=img.s[r0 : r0 + b, c0 : c0 + b],
                    i=img.i[r0 : r0 + b, c0 : c0 + b],
                )
            )
    return blocks


def block_path_costs(block: Block) -> np.ndarray:
    """The twelve directional costs of one block, channel-major.

    Layout: H costs for directions (0, 45, -45, 90), then S, then I.
    """
    out = np.empty(12)
    _kernels.block_costs(block.h, block.s, block.i, endpoint_table(block.side), out)
    return out


def _interleave_stats(costs: np.ndarray) -> np.ndarray:
    """(r^2, 12) per-block costs -> 24-vector of interleaved mu/sigma."""
    mu = costs.mean(axis=0)
    sigma = costs.std(axis=0)  # population form (ddof=0)
    vec = np.empty(VALUES_PER_SCALE)
    vec[0::2] = mu
    vec[1::2] = sigma
    return vec


def extract_scale(img: HsiImage, r: int) -> np.ndarray:
    """Per-scale descriptor: 24 pooled statistics over the r x r covering."""
    b = validate_grid(img, r)
    costs = _kernels.scale_costs(img.h, img.s, img.i, r, endpoint_table(b))
    return _interleave_stats(costs)


def extract_multiscale(img: HsiImage, scales: ScaleSpec) -> np.ndarray:
    """Concatenation of per-scale descriptors in the given scale order."""
    validate_scales(img, scales)
    return np.concatenate([extract_scale(img, r) for r in scales])


def feature_names(scales: ScaleSpec) -> list[str]:
    """Column names matching the multi-scale vector layout."""
    names = []
    for r in scales:
        for channel in CHANNELS:
            for direction in DIRECTIONS:
                for stat in ("mu", "sigma"):
                    names.append(f"s{r}_{channel}_{stat}_{direction.degrees}")
    return names


def warm_up() -> None:
    """Force JIT compilation of the path kernels on a tiny image.

    Useful before forking worker processes or timing extraction.
    """
    tiny = HsiImage(
        h=np.zeros((2, 2), dtype=np.uint8),
        s=np.zeros((2, 2), dtype=np.uint8),
        i=np.zeros((2, 2), dtype=np.uint8),
    )
    extract_scale(tiny, 1)
    extract_scale(tiny, 2)
