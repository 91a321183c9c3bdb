"""RandAugment-style policies over clips.

Four variants are supported:

``RA``
    RandAugment: 14 image ops, one magnitude for every frame.
``RA_T_plus``
    RandAugment-T+: adds ColourInvert; each magnitude op gets a linear curve
    from ``M - delta`` to ``M + delta``.
``RA_Tpp``
    RandAugment-T++: adds VideoReverse, FrameFadeIn and VideoCutMix.
``RA_Tpp_Mag``
    RandAugment-T++ with MagAugment swings on every magnitude op.

A policy optionally ends with a two-clip mix stage from :mod:`tempaug.mix`.

Stream layout for clip ``index`` under seed ``s``: the clip's root stream is
``RngStream(s, (0, index))``.  Under it, ``derive(0).derive(i)`` samples op
``i`` and its curve, ``derive(1).derive(i)`` drives applying op ``i`` and
``derive(2)`` drives the mix stage.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from .core import LabelMix, MagnitudeCurve, as_clip
from .mix import DEFAULT_ALPHA, MixKind, apply_mix
from .pixel_ops import (
    RANDAUGMENT_OPS,
    RANDAUGMENT_T_OPS,
    RANDAUGMENT_TPP_OPS,
    OpKind,
    apply_pixel_op,
)
from .rng import RngStream
from .schedules import (
    MagAugmentConfig,
    linear_schedule,
    magaugment_schedule,
    static_schedule,
    t_plus_endpoints,
)
from .single_video import frame_fade_in, video_cutmix, video_reverse

DEFAULT_NUM_OPS = 2
DEFAULT_MAGNITUDE = 0.3

# Top-level labels under the root seed.
CLIP_BRANCH = 0
PAIRING_BRANCH = 1


class Variant(str, enum.Enum):
    RA = "RA"
    RA_T_PLUS = "RA_T_plus"
    RA_TPP = "RA_Tpp"
    RA_TPP_MAG = "RA_Tpp_Mag"

    @property
    def universe(self) -> Tuple[OpKind, ...]:
        if self is Variant.RA:
            return RANDAUGMENT_OPS
        if self is Variant.RA_T_PLUS:
            return RANDAUGMENT_T_OPS
        return RANDAUGMENT_TPP_OPS

    @classmethod
    def parse(cls, name: str) -> "Variant":
        key = name.strip().lower().replace("-", "_").replace("+", "_plus")
        for v in cls:
            if v.value.lower() == key:
                return v
        raise ValueError(f"unknown variant {name!r}")


@dataclass(frozen=True)
class PolicySpec:
    """Declarative description of an augmentation pipeline.

    Attributes:
        variant: Which RandAugment flavour samples the ops and curves.
        num_ops: Ops applied per clip (``N``).
        magnitude: Base magnitude ``M`` in ``[0, 1]``.
        mag: MagAugment parameters; used only by ``RA_Tpp_Mag``.
        mix: Optional mix stage applied after the ops.
        alpha: Beta parameter of the mix stage.
        seed: Root seed.
        denylist: Ops removed from the variant's set (Identity cannot be).
    """

    variant: Variant = Variant.RA_TPP
    num_ops: int = DEFAULT_NUM_OPS
    magnitude: float = DEFAULT_MAGNITUDE
    mag: MagAugmentConfig = field(default_factory=MagAugmentConfig)
    mix: Optional[MixKind] = None
    alpha: float = DEFAULT_ALPHA
    seed: int = 0
    denylist: FrozenSet[OpKind] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "denylist", frozenset(OpKind(op) for op in self.denylist))
        if self.mix is not None:
            object.__setattr__(self, "mix", MixKind(self.mix))
        if self.num_ops < 0:
            raise ValueError(f"num_ops must be >= 0, got {self.num_ops}")
        if not 0.0 <= self.magnitude <= 1.0:
            raise ValueError(f"magnitude must be in [0, 1], got {self.magnitude}")
        if OpKind.IDENTITY in self.denylist:
            raise ValueError("Identity cannot be denied")
        if not self.active_ops:
            raise ValueError("denylist leaves no ops to sample")

    @property
    def active_ops(self) -> Tuple[OpKind, ...]:
        return tuple(op for op in self.variant.universe if op not in self.denylist)

    def clip_stream(self, index: int) -> RngStream:
        return RngStream(self.seed).derive(CLIP_BRANCH).derive(index)


def sample_curve(spec: PolicySpec, n: int, stream: RngStream) -> MagnitudeCurve:
    """Magnitude curve of one magnitude op under ``spec.variant``."""
    if spec.variant is Variant.RA:
        return static_schedule(spec.magnitude, n)
    start, end = t_plus_endpoints(spec.magnitude, stream.derive(0))
    curve = linear_schedule(start, end, n)
    if spec.variant is Variant.RA_TPP_MAG:
        curve = magaugment_schedule(curve, spec.mag, stream.derive(1))
    return curve


def _choose_op(spec: PolicySpec, stream: RngStream) -> OpKind:
    # Rejection from the full universe: a denylist only changes the draws
    # that would have picked a denied op.
    universe = spec.variant.universe
    active = set(spec.active_ops)
    k = 0
    while True:
        op = universe[stream.derive(k).integers(0, len(universe) - 1)]
        if op in active:
            return op
        k += 1


def sample_policy(spec: PolicySpec, n: int, stream: RngStream) -> List[Tuple[OpKind, Optional[MagnitudeCurve]]]:
    """Draw ``spec.num_ops`` ops with replacement, each with its curve.

    Magnitude-free ops carry ``None`` instead of a curve.
    """
    ops = []
    for i in range(spec.num_ops):
        s = stream.derive(i)
        op = _choose_op(spec, s.derive(0))
        curve = sample_curve(spec, n, s.derive(1)) if op.has_magnitude else None
        ops.append((op, curve))
    return ops


def apply_op(clip, op: OpKind, curve: Optional[MagnitudeCurve], stream: RngStream) -> np.ndarray:
    """Apply one sampled op, dispatching temporal ops to :mod:`tempaug.single_video`."""
    if op is OpKind.VIDEO_REVERSE:
        return video_reverse(clip)
    if op is OpKind.FRAME_FADE_IN:
        return frame_fade_in(clip)
    if op is OpKind.VIDEO_CUTMIX:
        return video_cutmix(clip, stream)
    return apply_pixel_op(clip, op, curve, stream)


def apply_policy(
    clip,
    label: int,
    spec: PolicySpec,
    partner: Optional[Tuple[np.ndarray, int]] = None,
    index: int = 0,
) -> Tuple[np.ndarray, LabelMix]:
    """Augment one clip.

    Args:
        clip: ``(n, H, W, C)`` uint8 clip.
        label: Class id of ``clip``.
        spec: The policy.
        partner: ``(clip_b, label_b)`` for mix stages that need a second clip.
        index: Position of the clip in its dataset; selects its random stream.

    Returns:
        The augmented clip and its label mix, which only the mix stage affects.
    """
    clip = as_clip(clip)
    needs_partner = spec.mix is not None and spec.mix.needs_partner
    if needs_partner and partner is None:
        raise ValueError(f"mix stage {spec.mix.value} needs a partner clip")
    if partner is not None and not needs_partner:
        raise ValueError("partner given but the policy has no two-clip mix stage")
    root = spec.clip_stream(index)
    out = clip
    for i, (op, curve) in enumerate(sample_policy(spec, len(clip), root.derive(0))):
        out = apply_op(out, op, curve, root.derive(1).derive(i))
    if out is clip:
        out = clip.copy()
    if spec.mix is None:
        return out, LabelMix.single(label)
    clip_b, label_b = partner if partner is not None else (None, None)
    return apply_mix(spec.mix, out, label, clip_b, label_b, spec.alpha, root.derive(2))
