"""Per-frame reference implementations used as test oracles.

Colour and histogram ops run through Pillow one frame at a time.
Geometric ops are evaluated pixel by pixel with Python floats.
"""

import math

import numpy as np
from PIL import Image, ImageEnhance, ImageOps

FILL = 128


def _pil(frame):
    return Image.fromarray(frame[..., 0] if frame.shape[-1] == 1 else frame)


def _arr(img, c):
    a = np.asarray(img, dtype=np.uint8)
    return a[..., None] if c == 1 else a


def pil_frame_op(name, frame, param=None):
    c = frame.shape[-1]
    img = _pil(frame)
    if name == "Identity":
        out = img
    elif name == "AutoContrast":
        out = ImageOps.autocontrast(img)
    elif name == "Equalise":
        out = ImageOps.equalize(img)
    elif name == "ColourInvert":
        out = ImageOps.invert(img)
    elif name == "Posterise":
        out = ImageOps.posterize(img, int(param))
    elif name == "Solarise":
        out = ImageOps.solarize(img, int(param))
    elif name == "Colour":
        out = ImageEnhance.Color(img).enhance(float(param))
    elif name == "Contrast":
        out = ImageEnhance.Contrast(img).enhance(float(param))
    elif name == "Brightness":
        out = ImageEnhance.Brightness(img).enhance(float(param))
    elif name == "Sharpness":
        out = ImageEnhance.Sharpness(img).enhance(float(param))
    else:
        raise KeyError(name)
    return _arr(out, c)


def source_coords(name, param, x, y, w, h):
    """Where output pixel (x, y) samples the input."""
    cx = (w - 1) / 2.0
    cy = (h - 1) / 2.0
    if name == "Rotate":
        th = math.radians(param)
        cos, sin = math.cos(th), math.sin(th)
        return (
            cos * x + sin * y + (cx - cos * cx - sin * cy),
            -sin * x + cos * y + (cy + sin * cx - cos * cy),
        )
    if name == "ShearX":
        return x + param * y + (-param * cy), y
    if name == "ShearY":
        return x, param * x + y + (-param * cx)
    if name == "TranslateX":
        return x + (-param), y
    if name == "TranslateY":
        return x, y + (-param)
    raise KeyError(name)


def geometric_frame_op(name, frame, param):
    h, w, c = frame.shape
    out = np.empty_like(frame)

    def px(yy, xx, ch):
        if 0 <= xx < w and 0 <= yy < h:
            return float(frame[yy, xx, ch])
        return float(FILL)

    for y in range(h):
        for x in range(w):
            sx, sy = source_coords(name, param, float(x), float(y), w, h)
            x0, y0 = math.floor(sx), math.floor(sy)
            fx, fy = sx - x0, sy - y0
            for ch in range(c):
                v00, v10 = px(y0, x0, ch), px(y0, x0 + 1, ch)
                v01, v11 = px(y0 + 1, x0, ch), px(y0 + 1, x0 + 1, ch)
                top = v00 + fx * (v10 - v00)
                bottom = v01 + fx * (v11 - v01)
                v = math.floor(top + fy * (bottom - top) + 0.5)
                out[y, x, ch] = min(max(v, 0), 255)
    return out


GEOMETRIC = ("Rotate", "ShearX", "ShearY", "TranslateX", "TranslateY")


def reference_frame_op(name, frame, param=None):
    if param is not None and name in GEOMETRIC and param == 0:
        return frame.copy()
    if name in GEOMETRIC:
        return geometric_frame_op(name, frame, param)
    return pil_frame_op(name, frame, param)


def reference_clip_op(name, clip, params):
    """Apply ``name`` frame by frame; ``params`` is a per-frame list (or None)."""
    frames = []
    for t, frame in enumerate(clip):
        p = None if params is None else params[t]
        frames.append(reference_frame_op(name, frame, p))
    return np.stack(frames)
