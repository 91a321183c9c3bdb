"""Small synthetic clips shared by the demos."""

import numpy as np


def moving_square(n=16, h=64, w=96, size=16, seed=0):
    """A bright square sliding left to right over a textured background."""
    rng = np.random.default_rng(seed)
    background = rng.integers(30, 90, (h, w, 3), dtype=np.uint8)
    clip = np.repeat(background[None], n, axis=0)
    for t in range(n):
        x = round(t * (w - size) / (n - 1))
        y = (h - size) // 2
        clip[t, y : y + size, x : x + size] = (230, 200, 40)
    return clip


def striped(n=16, h=64, w=96):
    """Vertical stripes whose colour changes frame by frame."""
    t, y, x = np.meshgrid(np.arange(n), np.arange(h), np.arange(w), indexing="ij")
    r = (x // 8 % 2) * 120 + 60
    g = 40 + 12 * t
    b = 200 - 6 * t
    return np.stack([r, g, b], axis=-1).astype(np.uint8)
