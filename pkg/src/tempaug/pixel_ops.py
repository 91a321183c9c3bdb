"""Per-frame pixel operations driven by a magnitude curve.

Kernels are vectorized over the frame axis: each frame gets its own
parameter, resolved from the curve value ``m_t`` by :func:`param_map`.
Colour and histogram operations follow Pillow's ``ImageOps`` and
``ImageEnhance`` arithmetic exactly (float32 blend, truncation), so the
outputs are interchangeable with running Pillow frame by frame.

Geometric operations warp with bilinear sampling around the frame center;
any sample that falls outside the frame reads the fill value 128.

Magnitude ranges are not given by the method this package implements; the
values below are the usual RandAugment ranges:

==========================  =========================================
op                          parameter at magnitude ``m``
==========================  =========================================
Rotate                      ``sign * 30 * m`` degrees
ShearX, ShearY              ``sign * 0.3 * m`` shear factor
TranslateX / TranslateY     ``sign * 0.3 * m * W`` (``H``) pixels
Colour/Contrast/Brightness  enhancement factor ``1 + sign * 0.9 * m``
/Sharpness
Posterise                   keep ``8 - round(4 m)`` bits
Solarise                    invert pixels ``>= round(256 (1 - m))``
==========================  =========================================
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .core import MagnitudeCurve, as_clip, round_half_up
from .rng import RngStream

FILL_VALUE = 128

MAX_ROTATE_DEG = 30.0
MAX_SHEAR = 0.3
MAX_TRANSLATE = 0.3
MAX_ENHANCE = 0.9
MAX_POSTERISE_DROP = 4


class OpKind(str, enum.Enum):
    IDENTITY = "Identity"
    ROTATE = "Rotate"
    POSTERISE = "Posterise"
    EQUALISE = "Equalise"
    SHARPNESS = "Sharpness"
    TRANSLATE_X = "TranslateX"
    TRANSLATE_Y = "TranslateY"
    COLOUR = "Colour"
    AUTO_CONTRAST = "AutoContrast"
    SOLARISE = "Solarise"
    CONTRAST = "Contrast"
    BRIGHTNESS = "Brightness"
    SHEAR_X = "ShearX"
    SHEAR_Y = "ShearY"
    COLOUR_INVERT = "ColourInvert"
    VIDEO_REVERSE = "VideoReverse"
    FRAME_FADE_IN = "FrameFadeIn"
    VIDEO_CUTMIX = "VideoCutMix"

    @property
    def has_magnitude(self) -> bool:
        return self not in _MAGNITUDE_FREE

    @property
    def is_temporal(self) -> bool:
        return self in TEMPORAL_OPS

    @property
    def is_signed(self) -> bool:
        return self.has_magnitude and self not in (OpKind.POSTERISE, OpKind.SOLARISE)

    @classmethod
    def parse(cls, name: str) -> "OpKind":
        key = name.strip().replace("_", "").replace("-", "").lower()
        for op in cls:
            if op.value.lower() == key:
                return op
        raise ValueError(f"unknown op {name!r}")


TEMPORAL_OPS = frozenset({OpKind.VIDEO_REVERSE, OpKind.FRAME_FADE_IN, OpKind.VIDEO_CUTMIX})
_MAGNITUDE_FREE = frozenset(
    {OpKind.IDENTITY, OpKind.AUTO_CONTRAST, OpKind.EQUALISE, OpKind.COLOUR_INVERT} | TEMPORAL_OPS
)

# Operation lists in the order RandAugment publishes them.
RANDAUGMENT_OPS = (
    OpKind.IDENTITY,
    OpKind.ROTATE,
    OpKind.POSTERISE,
    OpKind.EQUALISE,
    OpKind.SHARPNESS,
    OpKind.TRANSLATE_X,
    OpKind.TRANSLATE_Y,
    OpKind.COLOUR,
    OpKind.AUTO_CONTRAST,
    OpKind.SOLARISE,
    OpKind.CONTRAST,
    OpKind.BRIGHTNESS,
    OpKind.SHEAR_X,
    OpKind.SHEAR_Y,
)
RANDAUGMENT_T_OPS = RANDAUGMENT_OPS + (OpKind.COLOUR_INVERT,)
RANDAUGMENT_TPP_OPS = RANDAUGMENT_T_OPS + (
    OpKind.VIDEO_REVERSE,
    OpKind.FRAME_FADE_IN,
    OpKind.VIDEO_CUTMIX,
)
IMAGE_OPS = RANDAUGMENT_T_OPS

_ENHANCE_OPS = (OpKind.COLOUR, OpKind.CONTRAST, OpKind.BRIGHTNESS, OpKind.SHARPNESS)


def param_map(op: OpKind, m, sign: int = 1, width: int = 1, height: int = 1):
    """Convert normalized magnitude ``m`` into the op's native parameter.

    ``m`` may be a scalar or an array of per-frame magnitudes; ``sign`` is
    ignored by the unsigned ops (Posterise, Solarise).

    Raises:
        ValueError: for ops without a magnitude, or ``sign`` not in ``{-1, 1}``.
    """
    op = OpKind(op)
    if not op.has_magnitude:
        raise ValueError(f"{op.value} has no magnitude parameter")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign}")
    m = np.asarray(m, dtype=np.float64)
    if op is OpKind.ROTATE:
        out = sign * m * MAX_ROTATE_DEG
    elif op in (OpKind.SHEAR_X, OpKind.SHEAR_Y):
        out = sign * m * MAX_SHEAR
    elif op is OpKind.TRANSLATE_X:
        out = sign * m * MAX_TRANSLATE * width
    elif op is OpKind.TRANSLATE_Y:
        out = sign * m * MAX_TRANSLATE * height
    elif op in _ENHANCE_OPS:
        out = 1.0 + sign * m * MAX_ENHANCE
    elif op is OpKind.POSTERISE:
        out = (8 - round_half_up(MAX_POSTERISE_DROP * m)).astype(np.int64)
    elif op is OpKind.SOLARISE:
        out = round_half_up(256.0 * (1.0 - m)).astype(np.int64)
    else:  # pragma: no cover - every magnitude op is handled above
        raise AssertionError(op)
    return out[()] if out.ndim == 0 else out


def draw_sign(stream: RngStream) -> int:
    """Draw the per-clip sign of a signed op."""
    return -1 if stream.random() < 0.5 else 1


def apply_pixel_op(clip, op: OpKind, curve=None, stream: RngStream | None = None) -> np.ndarray:
    """Apply one image op to every frame with per-frame magnitude.

    Args:
        clip: ``(n, H, W, C)`` uint8 clip.
        op: A non-temporal :class:`OpKind`.
        curve: :class:`MagnitudeCurve` or length-``n`` array of magnitudes in
            ``[0, 1]``.  Ignored (may be ``None``) for magnitude-free ops.
        stream: Source of the per-clip sign; required for signed ops.  The
            sign is drawn from this stream before anything else.

    Returns:
        A new clip.
    """
    clip = as_clip(clip)
    op = OpKind(op)
    if op.is_temporal:
        raise ValueError(f"{op.value} is a temporal op; use single_video")
    n, h, w, _ = clip.shape
    sign = draw_sign(stream) if stream is not None else 1
    if not op.has_magnitude:
        return _MAGNITUDE_FREE_KERNELS[op](clip)
    if curve is None:
        raise ValueError(f"{op.value} needs a magnitude curve")
    m = curve.values if isinstance(curve, MagnitudeCurve) else np.asarray(curve, dtype=np.float64)
    if m.shape != (n,):
        raise ValueError(f"curve length {m.shape} does not match {n} frames")
    if np.any((m < 0) | (m > 1)):
        raise ValueError("magnitudes must lie in [0, 1]")
    if op.is_signed and stream is None:
        raise ValueError(f"{op.value} needs a stream for its sign")
    params = np.atleast_1d(param_map(op, m, sign, w, h))
    out = _MAGNITUDE_KERNELS[op](clip, params)
    # zero magnitude is an exact copy, whatever the kernel's resampling path
    still = m == 0
    if np.any(still):
        out[still] = clip[still]
    return out


# --------------------------------------------------------------------------
# magnitude-free kernels


def identity(clip):
    return clip.copy()


def invert(clip):
    return 255 - clip


def _apply_luts(clip, luts):
    """Map ``clip[t, ..., c]`` through ``luts[t, c]`` (shape ``(n, C, 256)``)."""
    n, h, w, c = clip.shape
    idx = clip.transpose(0, 3, 1, 2).reshape(n, c, h * w).astype(np.intp)
    out = np.take_along_axis(luts.astype(np.uint8), idx, axis=2)
    return out.reshape(n, c, h, w).transpose(0, 2, 3, 1).copy()


def _histograms(clip):
    n, h, w, c = clip.shape
    offs = (np.arange(n * c) * 256).reshape(n, 1, 1, c)
    flat = (clip.astype(np.int64) + offs).ravel()
    return np.bincount(flat, minlength=n * c * 256).reshape(n, c, 256)


def autocontrast(clip):
    """Stretch each channel of each frame to span ``[0, 255]``."""
    lo = clip.min(axis=(1, 2)).astype(np.float64)
    hi = clip.max(axis=(1, 2)).astype(np.float64)
    flat = hi <= lo
    span = np.where(flat, 1.0, hi - lo)
    scale = 255.0 / span
    offset = -lo * scale
    ix = np.arange(256, dtype=np.float64)
    luts = np.trunc(ix[None, None, :] * scale[..., None] + offset[..., None])
    luts = np.clip(luts, 0, 255)
    luts[flat] = ix
    return _apply_luts(clip, luts)


def equalise(clip):
    """Histogram equalisation per channel per frame."""
    hist = _histograms(clip)
    cum = np.cumsum(hist, axis=-1) - hist
    ix = np.arange(256)
    last = 255 - np.argmax(hist[..., ::-1] > 0, axis=-1)
    total = hist.sum(axis=-1)
    step = (total - np.take_along_axis(hist, last[..., None], axis=-1)[..., 0]) // 255
    nonzero = (hist > 0).sum(axis=-1)
    keep = (nonzero <= 1) | (step == 0)
    safe = np.where(keep, 1, step)
    luts = np.clip((safe[..., None] // 2 + cum) // safe[..., None], 0, 255)
    luts[keep] = ix
    return _apply_luts(clip, luts)


_MAGNITUDE_FREE_KERNELS = {
    OpKind.IDENTITY: identity,
    OpKind.AUTO_CONTRAST: autocontrast,
    OpKind.EQUALISE: equalise,
    OpKind.COLOUR_INVERT: invert,
}


# --------------------------------------------------------------------------
# LUT kernels


def posterise(clip, bits):
    bits = np.asarray(bits, dtype=np.int64).reshape(-1, 1, 1, 1)
    mask = (~((1 << (8 - bits)) - 1) & 0xFF).astype(np.uint8)
    return clip & mask


def solarise(clip, threshold):
    th = np.asarray(threshold, dtype=np.int64).reshape(-1, 1, 1, 1)
    return np.where(clip >= th, 255 - clip, clip).astype(np.uint8)


# --------------------------------------------------------------------------
# enhancement kernels (blend against a degenerate image)


def grayscale(clip):
    """ITU-R 601-2 luma in Pillow's fixed-point form, shape ``(n, H, W)``."""
    if clip.shape[-1] == 1:
        return clip[..., 0].copy()
    x = clip.astype(np.int64)
    lum = (x[..., 0] * 19595 + x[..., 1] * 38470 + x[..., 2] * 7471 + 0x8000) >> 16
    return lum.astype(np.uint8)


def _blend(degenerate, clip, factors):
    f = np.asarray(factors, dtype=np.float32).reshape(-1, 1, 1, 1)
    deg = degenerate.astype(np.float32)
    out = deg + f * (clip.astype(np.float32) - deg)
    return np.clip(out, 0, 255).astype(np.uint8)


def brightness(clip, factors):
    return _blend(np.zeros_like(clip), clip, factors)


def colour(clip, factors):
    gray = grayscale(clip)[..., None]
    return _blend(np.broadcast_to(gray, clip.shape), clip, factors)


def contrast(clip, factors):
    gray = grayscale(clip)
    count = gray.shape[1] * gray.shape[2]
    means = gray.reshape(len(gray), -1).sum(axis=1, dtype=np.int64) / count
    means = np.floor(means + 0.5).astype(np.uint8).reshape(-1, 1, 1, 1)
    return _blend(np.broadcast_to(means, clip.shape), clip, factors)


def smooth(clip):
    """3x3 smoothing with center weight 5; border pixels are kept."""
    x = clip.astype(np.int64)
    acc = 4 * x[:, 1:-1, 1:-1]
    for dy in (0, 1, 2):
        for dx in (0, 1, 2):
            acc = acc + x[:, dy : dy + x.shape[1] - 2, dx : dx + x.shape[2] - 2]
    out = clip.copy()
    out[:, 1:-1, 1:-1] = ((acc + 6) // 13).astype(np.uint8)
    return out


def sharpness(clip, factors):
    return _blend(smooth(clip), clip, factors)


# --------------------------------------------------------------------------
# geometric kernels


def affine_coefficients(op: OpKind, params, width: int, height: int) -> np.ndarray:
    """Inverse-mapping coefficients ``(a, b, c, d, e, f)`` per frame.

    The output pixel ``(x, y)`` samples the input at
    ``(a*x + b*y + c, d*x + e*y + f)``.  Rotation and shear act around the
    frame center ``((W - 1) / 2, (H - 1) / 2)``.
    """
    p = np.asarray(params, dtype=np.float64).ravel()
    cx = (width - 1) / 2.0
    cy = (height - 1) / 2.0
    one = np.ones_like(p)
    zero = np.zeros_like(p)
    if op is OpKind.ROTATE:
        # scalar libm trig: vectorized cos/sin may differ in the last ulp
        cos = np.array([math.cos(math.radians(v)) for v in p])
        sin = np.array([math.sin(math.radians(v)) for v in p])
        coeffs = (cos, sin, cx - cos * cx - sin * cy, -sin, cos, cy + sin * cx - cos * cy)
    elif op is OpKind.SHEAR_X:
        coeffs = (one, p, -p * cy, zero, one, zero)
    elif op is OpKind.SHEAR_Y:
        coeffs = (one, zero, zero, p, one, -p * cx)
    elif op is OpKind.TRANSLATE_X:
        coeffs = (one, zero, -p, zero, one, zero)
    elif op is OpKind.TRANSLATE_Y:
        coeffs = (one, zero, zero, zero, one, -p)
    else:
        raise ValueError(f"{op.value} is not geometric")
    return np.stack(coeffs, axis=1)


def warp_bilinear(clip, coeffs, fill: int = FILL_VALUE):
    """Bilinear inverse warp of every frame with its own coefficient row.

    Taps outside the frame read ``fill``.  Interpolation is separable, in
    float64: ``top = v00 + fx * (v10 - v00)``, ``bottom = v01 + fx * (v11 - v01)``,
    ``out = top + fy * (bottom - top)``, then rounded to nearest.
    """
    n, h, w, c = clip.shape
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    a, b, cc, d, e, f = (coeffs[:, i, None, None] for i in range(6))
    sx = a * xs + b * ys + cc
    sy = d * xs + e * ys + f
    x0 = np.floor(sx)
    y0 = np.floor(sy)
    fx = (sx - x0)[..., None]
    fy = (sy - y0)[..., None]
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)
    # a one-pixel fill border covers every tap of a sample that touches the frame
    outside = (x0 < -1) | (x0 > w - 1) | (y0 < -1) | (y0 > h - 1)
    x0 = np.where(outside, -1, x0) + 1
    y0 = np.where(outside, -1, y0) + 1
    padded = np.pad(clip, ((0, 0), (1, 1), (1, 1), (0, 0)), constant_values=fill)
    pixels = np.ascontiguousarray(padded).view(np.dtype((np.void, c))).ravel()
    row = w + 2
    base = (np.arange(n).reshape(n, 1, 1) * (h + 2) + y0) * row + x0

    def tap(offset):
        v = np.take(pixels, base + offset).view(np.uint8).reshape(n, h, w, c)
        return v.astype(np.float64)

    v00, v10, v01, v11 = tap(0), tap(1), tap(row), tap(row + 1)
    top = v00 + fx * (v10 - v00)
    bottom = v01 + fx * (v11 - v01)
    out = top + fy * (bottom - top)
    out = np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)
    out[outside] = fill
    return out


def _geometric(op):
    def kernel(clip, params):
        _, h, w, _ = clip.shape
        return warp_bilinear(clip, affine_coefficients(op, params, w, h))

    kernel.__name__ = op.value.lower()
    return kernel


_MAGNITUDE_KERNELS = {
    OpKind.ROTATE: _geometric(OpKind.ROTATE),
    OpKind.SHEAR_X: _geometric(OpKind.SHEAR_X),
    OpKind.SHEAR_Y: _geometric(OpKind.SHEAR_Y),
    OpKind.TRANSLATE_X: _geometric(OpKind.TRANSLATE_X),
    OpKind.TRANSLATE_Y: _geometric(OpKind.TRANSLATE_Y),
    OpKind.POSTERISE: posterise,
    OpKind.SOLARISE: solarise,
    OpKind.COLOUR: colour,
    OpKind.CONTRAST: contrast,
    OpKind.BRIGHTNESS: brightness,
    OpKind.SHARPNESS: sharpness,
}
