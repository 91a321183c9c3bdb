"""Temporal augmentation for video clips.

Clips are ``uint8`` arrays of shape ``(n, H, W, C)``.  Every random choice
comes from an :class:`RngStream`, so results replay bit-exactly from a seed.
"""

from .core import BoxTrajectory, LabelMix, MagnitudeCurve, as_clip
from .mix import (
    FLOAT_KINDS,
    LambdaSchedule,
    MixKind,
    MixPlan,
    RegionScale,
    apply_mix,
    plan_mix,
    region_from_scale,
    render_mix,
    sample_box_trajectory,
    sample_lambda_schedule,
    sample_region_scale,
)
from .pixel_ops import OpKind, apply_pixel_op, param_map
from .policy import PolicySpec, Variant, apply_policy, sample_curve, sample_policy
from .rng import RngStream
from .schedules import (
    MagAugmentConfig,
    ShortClipWarning,
    linear_schedule,
    magaugment_schedule,
    static_schedule,
    t_plus_endpoints,
)
from .single_video import fade_lambda, frame_fade_in, video_cutmix, video_reverse

__version__ = "0.1.0"

__all__ = [
    "BoxTrajectory",
    "FLOAT_KINDS",
    "LabelMix",
    "LambdaSchedule",
    "MagAugmentConfig",
    "MagnitudeCurve",
    "MixKind",
    "MixPlan",
    "OpKind",
    "PolicySpec",
    "RegionScale",
    "RngStream",
    "ShortClipWarning",
    "Variant",
    "apply_mix",
    "apply_pixel_op",
    "apply_policy",
    "as_clip",
    "fade_lambda",
    "frame_fade_in",
    "linear_schedule",
    "magaugment_schedule",
    "param_map",
    "plan_mix",
    "region_from_scale",
    "render_mix",
    "sample_box_trajectory",
    "sample_curve",
    "sample_lambda_schedule",
    "sample_policy",
    "sample_region_scale",
    "static_schedule",
    "t_plus_endpoints",
    "video_cutmix",
    "video_reverse",
]
