"""Augmentations that rearrange or remix the frames of a single clip.

None of these change the clip's label.
"""

from __future__ import annotations

import math

import numpy as np

from .core import as_clip, round_half_up, to_uint8
from .rng import RngStream

VIDEO_CUTMIX_AREA = 0.2


def video_reverse(clip) -> np.ndarray:
    """Play the clip backwards: frame ``t`` becomes frame ``n - 1 - t``."""
    return as_clip(clip)[::-1].copy()


def fade_lambda(t: int, n: int) -> float:
    """Mixing ratio of frame ``t`` in :func:`frame_fade_in`.

    Rises as ``t / n`` up to the middle of the clip and falls as
    ``(n - t) / n`` after it, so it starts at 0 and peaks at 0.5 (for even
    ``n``; odd clips peak at ``(n - 1) / (2 n)``).
    """
    if n < 2:
        raise ValueError(f"need at least 2 frames, got {n}")
    if not 0 <= t <= n - 1:
        raise ValueError(f"frame index {t} out of range for {n} frames")
    return t / n if t <= n / 2 else (n - t) / n


def fade_lambdas(n: int) -> np.ndarray:
    return np.array([fade_lambda(t, n) for t in range(n)])


def frame_fade_in(clip) -> np.ndarray:
    """Blend each frame with its mirror frame.

    Output frame ``t`` is ``(1 - lam_t) * x[t] + lam_t * x[n - 1 - t]`` with
    ``lam_t = fade_lambda(t, n)``, rounded to nearest.
    """
    clip = as_clip(clip)
    n = len(clip)
    lam = fade_lambdas(n).reshape(n, 1, 1, 1)
    x = clip.astype(np.float64)
    return to_uint8((1.0 - lam) * x + lam * x[::-1])


def video_cutmix_box(width: int, height: int, area: float = VIDEO_CUTMIX_AREA) -> tuple[int, int]:
    """Side lengths of a box covering ``area`` of the frame at the frame's aspect ratio."""
    scale = math.sqrt(area)
    w = int(round_half_up(scale * width))
    h = int(round_half_up(scale * height))
    if w < 1 or h < 1:
        raise ValueError(f"degenerate box {w}x{h} for a {width}x{height} frame")
    return w, h


def video_cutmix(clip, stream: RngStream, area: float = VIDEO_CUTMIX_AREA) -> np.ndarray:
    """Paste a static box from a frame-shuffled copy of the clip.

    A permutation ``sigma`` is drawn from ``stream.derive(0)`` and the box's
    top-left corner ``(x0, y0)`` from ``stream.derive(1)``.  Inside the box,
    output frame ``t`` shows input frame ``sigma[t]``; outside it is
    unchanged.
    """
    clip = as_clip(clip)
    n, height, width, _ = clip.shape
    bw, bh = video_cutmix_box(width, height, area)
    sigma = stream.derive(0).permutation(n)
    s = stream.derive(1)
    x0 = s.integers(0, width - bw)
    y0 = s.integers(0, height - bh)
    out = clip.copy()
    out[:, y0 : y0 + bh, x0 : x0 + bw] = clip[sigma, y0 : y0 + bh, x0 : x0 + bw]
    return out
