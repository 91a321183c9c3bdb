"""Delete, cut-and-paste and blend operators over clip pairs.

The static operators keep one box position and one mixing ratio for the
whole clip.  Their ``Float`` counterparts sample a start and an end value
and interpolate linearly in between, so the box drifts across the frame
and the mixing ratio fades over time.

Region size comes from ``I ~ Beta(alpha, alpha)``.  For the 2-D operators
the box sides are ``W * sqrt(1 - I)`` and ``H * sqrt(1 - I)``; the cube
operators split the volume ``1 - I`` evenly across time and both axes with a
cube root.  Boxes are always kept fully inside the frame, so the soft-label
weight is the exact replaced fraction and needs no per-frame correction.

Random draws are taken from derived streams of the operator's stream so
that a static operator and its Float counterpart share every draw they have
in common:

====  ==================================
0     region scale ``I``
1     box trajectory (start, then end)
2     mixing ratio (base, then spread)
3     temporal offset of cube or band
====  ==================================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import BoxTrajectory, LabelMix, as_clip, round_half_up, to_uint8
from .rng import RngStream

DEFAULT_ALPHA = 1.0
CUTOUT_FILL = 128

_CUTOUT, _CUTMIX, _MIXUP, _CUTMIXUP, _FRAMECUTMIXUP = (
    "cutout",
    "cutmix",
    "mixup",
    "cutmixup",
    "framecutmixup",
)


class MixKind(str, enum.Enum):
    CUTOUT = "CutOut"
    CUBE_CUTOUT = "CubeCutOut"
    CUTMIX = "CutMix"
    CUBE_CUTMIX = "CubeCutMix"
    MIXUP = "MixUp"
    FADE_MIXUP = "FadeMixUp"
    CUTMIXUP = "CutMixUp"
    CUBE_CUTMIXUP = "CubeCutMixUp"
    FRAME_CUTMIXUP = "FrameCutMixUp"
    FLOAT_CUTOUT = "FloatCutOut"
    FLOAT_CUBE_CUTOUT = "FloatCubeCutOut"
    FLOAT_CUTMIX = "FloatCutMix"
    FLOAT_CUBE_CUTMIX = "FloatCubeCutMix"
    FLOAT_CUTMIXUP = "FloatCutMixUp"
    FLOAT_CUBE_CUTMIXUP = "FloatCubeCutMixUp"
    FLOAT_FRAME_CUTMIXUP = "FloatFrameCutMixUp"

    @property
    def family(self) -> str:
        return _TRAITS[self][0]

    @property
    def cube(self) -> bool:
        return _TRAITS[self][1]

    @property
    def floating(self) -> bool:
        return _TRAITS[self][2]

    @property
    def needs_partner(self) -> bool:
        return self.family != _CUTOUT

    @property
    def has_box(self) -> bool:
        return self.family in (_CUTOUT, _CUTMIX, _CUTMIXUP)

    @property
    def blends(self) -> bool:
        return self.family in (_MIXUP, _CUTMIXUP, _FRAMECUTMIXUP)

    @property
    def static_counterpart(self) -> "MixKind":
        for kind, traits in _TRAITS.items():
            if traits == (self.family, self.cube, False):
                return kind
        raise AssertionError(self)  # pragma: no cover

    @classmethod
    def parse(cls, name: str) -> "MixKind":
        key = name.strip().replace("_", "").replace("-", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise ValueError(f"unknown mix kind {name!r}")


_TRAITS = {
    MixKind.CUTOUT: (_CUTOUT, False, False),
    MixKind.CUBE_CUTOUT: (_CUTOUT, True, False),
    MixKind.CUTMIX: (_CUTMIX, False, False),
    MixKind.CUBE_CUTMIX: (_CUTMIX, True, False),
    MixKind.MIXUP: (_MIXUP, False, False),
    MixKind.FADE_MIXUP: (_MIXUP, False, True),
    MixKind.CUTMIXUP: (_CUTMIXUP, False, False),
    MixKind.CUBE_CUTMIXUP: (_CUTMIXUP, True, False),
    MixKind.FRAME_CUTMIXUP: (_FRAMECUTMIXUP, False, False),
    MixKind.FLOAT_CUTOUT: (_CUTOUT, False, True),
    MixKind.FLOAT_CUBE_CUTOUT: (_CUTOUT, True, True),
    MixKind.FLOAT_CUTMIX: (_CUTMIX, False, True),
    MixKind.FLOAT_CUBE_CUTMIX: (_CUTMIX, True, True),
    MixKind.FLOAT_CUTMIXUP: (_CUTMIXUP, False, True),
    MixKind.FLOAT_CUBE_CUTMIXUP: (_CUTMIXUP, True, True),
    MixKind.FLOAT_FRAME_CUTMIXUP: (_FRAMECUTMIXUP, False, True),
}

FLOAT_KINDS = tuple(k for k in MixKind if k.floating and k is not MixKind.FADE_MIXUP)


@dataclass(frozen=True)
class RegionScale:
    """Integer box size and temporal length derived from ``I``."""

    box_w: int
    box_h: int
    t_len: int
    scale: float


def _clamp_round(x, lo, hi):
    return int(min(max(round_half_up(x), lo), hi))


def region_from_scale(scale: float, width: int, height: int, n: int, dims: int = 2) -> RegionScale:
    """Box sides (and for ``dims=3`` the temporal length) for region scale ``I``."""
    keep = 1.0 - scale
    if dims == 2:
        side = math.sqrt(keep)
        t_len = n
    elif dims == 3:
        side = keep ** (1.0 / 3.0)
        t_len = _clamp_round(n * side, 1, n)
    else:
        raise ValueError(f"dims must be 2 or 3, got {dims}")
    return RegionScale(
        _clamp_round(width * side, 1, width),
        _clamp_round(height * side, 1, height),
        t_len,
        scale,
    )


def sample_region_scale(
    stream: RngStream, alpha: float, width: int, height: int, n: int, dims: int = 2
) -> RegionScale:
    """Draw ``I ~ Beta(alpha, alpha)`` and convert it with :func:`region_from_scale`."""
    return region_from_scale(stream.beta(alpha), width, height, n, dims)


def sample_box_trajectory(
    stream: RngStream,
    box_w: int,
    box_h: int,
    width: int,
    height: int,
    n: int,
    t_a: int = 0,
    t_b: Optional[int] = None,
    floating: bool = False,
) -> BoxTrajectory:
    """Sample box centers at ``t_a`` and ``t_b`` and interpolate between them.

    Centers are uniform over ``[box_w / 2, W - box_w / 2] x [box_h / 2, H - box_h / 2]``
    so the box never leaves the frame.  The start center comes from
    ``stream.derive(0)``; a floating box draws its end center from
    ``stream.derive(1)``, a static one reuses the start.
    """
    if not (1 <= box_w <= width and 1 <= box_h <= height):
        raise ValueError(f"box {box_w}x{box_h} does not fit a {width}x{height} frame")

    def center(s):
        cx = s.uniform(box_w / 2.0, width - box_w / 2.0)
        cy = s.uniform(box_h / 2.0, height - box_h / 2.0)
        return cx, cy

    start = center(stream.derive(0))
    end = center(stream.derive(1)) if floating else start
    return BoxTrajectory.linear(box_w, box_h, start, end, n, t_a, t_b)


@dataclass(frozen=True, eq=False)
class LambdaSchedule:
    """Per-frame mixing ratio, linear from ``base - spread`` to ``base + spread`` over ``[t_a, t_b]``."""

    values: np.ndarray
    base: float
    spread: float
    t_a: int
    t_b: int

    @classmethod
    def linear(cls, base: float, spread: float, n: int, t_a: int = 0, t_b: Optional[int] = None):
        t_b = n - 1 if t_b is None else t_b
        lo, hi = base - spread, base + spread
        if not (0.0 <= lo and hi <= 1.0):
            raise ValueError(f"mixing ratios [{lo}, {hi}] leave [0, 1]")
        t = np.arange(n, dtype=np.float64)
        frac = np.zeros(n) if t_b == t_a else np.clip((t - t_a) / (t_b - t_a), 0.0, 1.0)
        values = lo + frac * (hi - lo)
        values.setflags(write=False)
        return cls(values, float(base), float(spread), int(t_a), int(t_b))

    @property
    def mean_lambda(self) -> float:
        """Mean ratio over ``[t_a, t_b]``; exactly ``base`` when the schedule is flat."""
        if self.spread == 0.0:
            return self.base
        return float(np.mean(self.values[self.t_a : self.t_b + 1]))


def sample_lambda_schedule(
    stream: RngStream,
    alpha: float,
    n: int,
    floating: bool = False,
    t_a: int = 0,
    t_b: Optional[int] = None,
) -> LambdaSchedule:
    """Draw ``lam ~ Beta(alpha, alpha)`` from ``stream.derive(0)``.

    A floating schedule also draws ``eps ~ U(0, min(lam, 1 - lam))`` from
    ``stream.derive(1)`` and runs from ``lam - eps`` to ``lam + eps``; both
    endpoints stay in ``[0, 1]`` and their mean is ``lam``.
    """
    lam = stream.derive(0).beta(alpha)
    eps = stream.derive(1).uniform(0.0, min(lam, 1.0 - lam)) if floating else 0.0
    return LambdaSchedule.linear(lam, eps, n, t_a, t_b)


@dataclass(frozen=True)
class MixPlan:
    """Every sampled quantity needed to render one mix."""

    kind: MixKind
    n: int
    height: int
    width: int
    region: RegionScale
    t_a: int
    t_b: int
    trajectory: Optional[BoxTrajectory] = None
    lambdas: Optional[LambdaSchedule] = None

    @property
    def affected_volume(self) -> int:
        """Number of pixel positions (over all frames) the mix touches."""
        return self.region.box_w * self.region.box_h * (self.t_b - self.t_a + 1)

    def weight_b(self) -> float:
        if not self.kind.needs_partner:
            return 0.0
        frac = self.affected_volume / (self.width * self.height * self.n)
        if self.kind.blends:
            return frac * self.lambdas.mean_lambda
        return frac


def plan_mix(kind: MixKind, n: int, height: int, width: int, alpha: float, stream: RngStream) -> MixPlan:
    """Sample the region, trajectory and mixing ratios of one mix."""
    kind = MixKind(kind)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if kind.family == _MIXUP:
        region = RegionScale(width, height, n, 0.0)
    elif kind.family == _FRAMECUTMIXUP:
        scale = stream.derive(0).beta(alpha)
        region = RegionScale(width, height, _clamp_round(n * (1.0 - scale), 1, n), scale)
    else:
        region = sample_region_scale(stream.derive(0), alpha, width, height, n, 3 if kind.cube else 2)

    t_a = stream.derive(3).integers(0, n - region.t_len) if region.t_len < n else 0
    t_b = t_a + region.t_len - 1

    trajectory = None
    if kind.has_box:
        trajectory = sample_box_trajectory(
            stream.derive(1), region.box_w, region.box_h, width, height, n, t_a, t_b, kind.floating
        )
    lambdas = None
    if kind.blends:
        lambdas = sample_lambda_schedule(stream.derive(2), alpha, n, kind.floating, t_a, t_b)
    return MixPlan(kind, n, height, width, region, t_a, t_b, trajectory, lambdas)


def render_mix(plan: MixPlan, clip_a, clip_b=None, fill: int = CUTOUT_FILL) -> np.ndarray:
    """Apply a sampled :class:`MixPlan` to a clip pair."""
    clip_a = as_clip(clip_a)
    if clip_a.shape[:3] != (plan.n, plan.height, plan.width):
        raise ValueError(f"clip shape {clip_a.shape} does not match the plan")
    if plan.kind.needs_partner:
        if clip_b is None:
            raise ValueError(f"{plan.kind.value} needs a second clip")
        clip_b = as_clip(clip_b)
        if clip_b.shape != clip_a.shape:
            raise ValueError(f"clip shapes differ: {clip_a.shape} vs {clip_b.shape}")
    out = clip_a.copy()
    if plan.trajectory is not None:
        corners = plan.trajectory.top_left()
    bw, bh = plan.region.box_w, plan.region.box_h
    for t in range(plan.t_a, plan.t_b + 1):
        if plan.trajectory is not None:
            x0, y0 = corners[t]
            ys, xs = slice(y0, y0 + bh), slice(x0, x0 + bw)
        else:
            ys, xs = slice(None), slice(None)
        family = plan.kind.family
        if family == _CUTOUT:
            out[t, ys, xs] = fill
        elif family == _CUTMIX:
            out[t, ys, xs] = clip_b[t, ys, xs]
        else:
            lam = plan.lambdas.values[t]
            a = clip_a[t, ys, xs].astype(np.float64)
            b = clip_b[t, ys, xs].astype(np.float64)
            out[t, ys, xs] = to_uint8((1.0 - lam) * a + lam * b)
    return out


def apply_mix(
    kind: MixKind,
    clip_a,
    label_a: int,
    clip_b=None,
    label_b: Optional[int] = None,
    alpha: float = DEFAULT_ALPHA,
    stream: Optional[RngStream] = None,
    fill: int = CUTOUT_FILL,
) -> Tuple[np.ndarray, LabelMix]:
    """Sample and apply one mix.

    Returns:
        The mixed clip and its :class:`LabelMix`; ``weight_b`` is the exact
        fraction of the output signal taken from ``clip_b``.
    """
    kind = MixKind(kind)
    if stream is None:
        raise ValueError("apply_mix needs an RngStream")
    clip_a = as_clip(clip_a)
    if kind.needs_partner and (clip_b is None or label_b is None):
        raise ValueError(f"{kind.value} needs a second clip and label")
    n, h, w, _ = clip_a.shape
    plan = plan_mix(kind, n, h, w, alpha, stream)
    out = render_mix(plan, clip_a, clip_b, fill)
    if kind.needs_partner:
        mix = LabelMix(label_a, label_b, plan.weight_b())
    else:
        mix = LabelMix.single(label_a)
    return out, mix
