"""Clip data model and shared value types.

A clip is a plain ``uint8`` array of shape ``(n, H, W, C)`` with ``C`` in
``{1, 3}``.  Frame indices are 0-based throughout.  Operations never modify
their inputs; they return fresh arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

MIN_FRAMES = 2
MIN_SIDE = 8


def as_clip(frames) -> np.ndarray:
    """Validate ``frames`` and return it as an ``(n, H, W, C)`` uint8 array.

    A 3-D ``(n, H, W)`` array is treated as single-channel.  The input is
    returned without copying when it already has the right dtype and layout.

    Raises:
        ValueError: on wrong rank, dtype, size or channel count.
    """
    arr = np.asarray(frames)
    if arr.ndim == 3:
        arr = arr[..., None]
    if arr.ndim != 4:
        raise ValueError(f"clip must have shape (n, H, W, C), got {arr.shape}")
    if arr.dtype != np.uint8:
        raise ValueError(f"clip must be uint8, got {arr.dtype}")
    n, h, w, c = arr.shape
    if n < MIN_FRAMES:
        raise ValueError(f"clip needs at least {MIN_FRAMES} frames, got {n}")
    if h < MIN_SIDE or w < MIN_SIDE:
        raise ValueError(f"frames must be at least {MIN_SIDE}x{MIN_SIDE}, got {h}x{w}")
    if c not in (1, 3):
        raise ValueError(f"clip must have 1 or 3 channels, got {c}")
    return arr


def round_half_up(x):
    """Round to nearest with ties away from zero for non-negative input."""
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)


def to_uint8(x) -> np.ndarray:
    """Round a float array to nearest and saturate into ``[0, 255]``."""
    return np.clip(round_half_up(x), 0, 255).astype(np.uint8)


@dataclass(frozen=True)
class LabelMix:
    """Soft-label outcome: ``weight_b`` of the signal belongs to ``label_b``."""

    label_a: int
    label_b: int
    weight_b: float

    def __post_init__(self):
        if not 0.0 <= self.weight_b <= 1.0:
            raise ValueError(f"weight_b must be in [0, 1], got {self.weight_b}")

    @classmethod
    def single(cls, label: int) -> "LabelMix":
        return cls(label, label, 0.0)

    def as_dict(self) -> dict:
        return {"label_a": self.label_a, "label_b": self.label_b, "weight_b": self.weight_b}


@dataclass(frozen=True, eq=False)
class MagnitudeCurve:
    """Per-frame normalized magnitudes with the knots they interpolate.

    ``values[t]`` is the piecewise-linear interpolation of ``knots`` at frame
    ``t``; the first knot sits at frame 0 and the last at frame ``n - 1``.
    """

    values: np.ndarray
    knots: Tuple[Tuple[int, float], ...]

    @classmethod
    def from_knots(cls, knots: Sequence[Tuple[int, float]], n: int) -> "MagnitudeCurve":
        knots = tuple(sorted((int(t), float(v)) for t, v in knots))
        ts = [t for t, _ in knots]
        if len(set(ts)) != len(ts):
            raise ValueError(f"duplicate knot positions: {ts}")
        if ts[0] != 0 or ts[-1] != n - 1:
            raise ValueError(f"knots must span [0, {n - 1}], got {ts[0]}..{ts[-1]}")
        vs = [v for _, v in knots]
        if min(vs) < 0.0 or max(vs) > 1.0:
            raise ValueError("knot values must lie in [0, 1]")
        values = np.interp(np.arange(n, dtype=np.float64), ts, vs)
        values.setflags(write=False)
        return cls(values, knots)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagnitudeCurve):
            return NotImplemented
        return self.knots == other.knots and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BoxTrajectory:
    """A constant-size box whose center moves linearly over a frame range.

    ``centers`` has shape ``(n, 2)`` holding ``(cx, cy)`` per frame.  Inside
    ``[t_a, t_b]`` the centers interpolate linearly between the two endpoint
    centers; outside that range they hold the nearest endpoint value.
    """

    box_w: int
    box_h: int
    centers: np.ndarray
    t_a: int
    t_b: int

    @classmethod
    def linear(cls, box_w, box_h, start, end, n, t_a=0, t_b=None) -> "BoxTrajectory":
        t_b = n - 1 if t_b is None else t_b
        if not 0 <= t_a <= t_b <= n - 1:
            raise ValueError(f"invalid temporal extent [{t_a}, {t_b}] for n={n}")
        t = np.arange(n, dtype=np.float64)
        if t_b == t_a:
            frac = np.zeros(n)
        else:
            frac = np.clip((t - t_a) / (t_b - t_a), 0.0, 1.0)
        start = np.asarray(start, dtype=np.float64)
        end = np.asarray(end, dtype=np.float64)
        centers = start[None, :] + frac[:, None] * (end - start)[None, :]
        centers.setflags(write=False)
        return cls(int(box_w), int(box_h), centers, int(t_a), int(t_b))

    @property
    def extent(self) -> Tuple[int, int]:
        return self.t_a, self.t_b

    def top_left(self) -> np.ndarray:
        """Integer ``(x0, y0)`` per frame of the rasterized box."""
        half = np.array([self.box_w / 2.0, self.box_h / 2.0])
        return round_half_up(self.centers - half[None, :]).astype(np.int64)

    def inside(self, width: int, height: int) -> bool:
        """True when the box lies fully inside a ``width x height`` frame at every frame of the extent."""
        sl = slice(self.t_a, self.t_b + 1)
        cx, cy = self.centers[sl, 0], self.centers[sl, 1]
        x0, y0 = self.top_left()[sl].T
        return bool(
            np.all(cx - self.box_w / 2.0 >= 0)
            and np.all(cx + self.box_w / 2.0 <= width)
            and np.all(cy - self.box_h / 2.0 >= 0)
            and np.all(cy + self.box_h / 2.0 <= height)
            and np.all(x0 >= 0)
            and np.all(x0 + self.box_w <= width)
            and np.all(y0 >= 0)
            and np.all(y0 + self.box_h <= height)
        )
