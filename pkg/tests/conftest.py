import numpy as np
import pytest
from PIL import Image


def write_corpus(
    root,
    class_colors: dict[str, tuple[int, int, int]],
    samples_per_class: int,
    side: int,
    noise: int = 5,
    seed: int = 0,
    compress_level: int = 1,
):
    """Write a class-per-directory PNG corpus of noisy constant-color textures."""
    rng = np.random.default_rng(seed)
    for label, base in class_colors.items():
        class_dir = root / label
        class_dir.mkdir(parents=True, exist_ok=True)
        for k in range(samples_per_class):
            jitter = rng.integers(-noise, noise + 1, size=(side, side, 3))
            pixels = np.clip(np.array(base)[None, None, :] + jitter, 0, 255).astype(np.uint8)
            Image.fromarray(pixels, mode="RGB").save(
                class_dir / f"{k:04d}.png", compress_level=compress_level
            )
    return root


@pytest.fixture
def small_corpus(tmp_path):
    """Three well-separated classes, 4 samples each, 8x8 pixels."""
    colors = {"dark": (10, 10, 10), "mid": (120, 130, 110), "bright": (240, 230, 250)}
    return write_corpus(tmp_path / "corpus", colors, samples_per_class=4, side=8)


@pytest.fixture
def separable_corpus(tmp_path):
    """Four classes x 10 samples, 64x64, distinct base colors plus +/-5 noise."""
    colors = {
        "a": (30, 30, 30),
        "b": (90, 140, 60),
        "c": (200, 60, 60),
        "d": (60, 80, 210),
    }
    return write_corpus(tmp_path / "corpus64", colors, samples_per_class=10, side=64, seed=11)
