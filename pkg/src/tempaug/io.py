"""Clip containers, manifests and policy files.

CLIPRAW layout::

    b"CLR1"                      magic, 4 bytes
    n, H, W, C                   little-endian uint32 each
    n * H * W * C bytes          frame-major, row-major, channels interleaved

A PNG clip is a directory of ``frame_00000.png`` ... ``frame_{n-1:05d}.png``.

Manifests are JSON lines.  The first line is a header
``{"format_version": 1}``; every following line describes one clip.

Policy files use INI syntax with a single ``[policy]`` section::

    [policy]
    format_version = 1
    variant = RA_Tpp_Mag
    num_ops = 2
    magnitude = 0.3
    mag_beta = 8
    mag_points = 2
    mag_min = 0.0
    mag_max = 1.0
    mix = FloatCutMix
    alpha = 1.0
    seed = 0
    denylist = VideoReverse, FrameFadeIn
"""

from __future__ import annotations

import configparser
import json
import re
import struct
from pathlib import Path
from typing import Iterable, List, Optional

import numpy as np
from PIL import Image

from .mix import MixKind
from .pixel_ops import OpKind
from .policy import PolicySpec, Variant
from .schedules import MagAugmentConfig

MAGIC = b"CLR1"
_HEADER = struct.Struct("<4s4I")
FORMAT_VERSION = 1
_FRAME_RE = re.compile(r"^frame_(\d{5})\.png$")


class ClipFormatError(ValueError):
    pass


def read_clip(path) -> np.ndarray:
    """Read a CLIPRAW file or a directory of PNG frames."""
    path = Path(path)
    if path.is_dir():
        return _read_png_dir(path)
    data = path.read_bytes()
    if len(data) < _HEADER.size:
        raise ClipFormatError(f"{path}: truncated header")
    magic, n, h, w, c = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ClipFormatError(f"{path}: bad magic {magic!r}")
    size = n * h * w * c
    payload = data[_HEADER.size :]
    if len(payload) != size:
        raise ClipFormatError(f"{path}: payload has {len(payload)} bytes, header says {size}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(n, h, w, c).copy()


def _read_png_dir(path: Path) -> np.ndarray:
    indices = {}
    for p in path.iterdir():
        m = _FRAME_RE.match(p.name)
        if m:
            indices[int(m.group(1))] = p
    if not indices:
        raise ClipFormatError(f"{path}: no frame_NNNNN.png files")
    for k in range(max(indices) + 1):
        if k not in indices:
            raise ClipFormatError(f"{path}: missing frame index {k}")
    frames = []
    for k in range(len(indices)):
        with Image.open(indices[k]) as im:
            if im.mode not in ("L", "RGB"):
                im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
        if arr.ndim == 2:
            arr = arr[..., None]
        if frames and arr.shape != frames[0].shape:
            raise ClipFormatError(
                f"{path}: frame {k} has shape {arr.shape}, frame 0 has {frames[0].shape}"
            )
        frames.append(arr)
    return np.stack(frames)


def write_clip(clip, path, format: str = "clipraw") -> None:
    """Write ``clip`` as CLIPRAW (a file) or PNG (a directory)."""
    clip = np.asarray(clip)
    if clip.ndim == 3:
        clip = clip[..., None]
    if clip.dtype != np.uint8 or clip.ndim != 4:
        raise ValueError(f"expected a uint8 (n, H, W, C) clip, got {clip.dtype} {clip.shape}")
    path = Path(path)
    if format == "clipraw":
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            f.write(_HEADER.pack(MAGIC, *clip.shape))
            f.write(np.ascontiguousarray(clip).tobytes())
    elif format == "png":
        path.mkdir(parents=True, exist_ok=True)
        for t, frame in enumerate(clip):
            img = frame[..., 0] if frame.shape[-1] == 1 else frame
            Image.fromarray(img).save(path / f"frame_{t:05d}.png")
    else:
        raise ValueError(f"unknown clip format {format!r}")


def write_png(image, path) -> None:
    image = np.asarray(image)
    if image.ndim == 3 and image.shape[-1] == 1:
        image = image[..., 0]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(image).save(path)


# --------------------------------------------------------------------------
# manifests


def read_manifest(path) -> List[dict]:
    """Return the manifest's clip entries; ``path`` entries are resolved against its folder."""
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        return []
    header = json.loads(lines[0])
    if header.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported manifest header {header}")
    entries = [json.loads(ln) for ln in lines[1:]]
    seen = set()
    for e in entries:
        for key in ("clip_id", "path", "label"):
            if key not in e:
                raise ValueError(f"{path}: entry missing {key!r}: {e}")
        if e["clip_id"] in seen:
            raise ValueError(f"{path}: duplicate clip_id {e['clip_id']!r}")
        seen.add(e["clip_id"])
        e["resolved_path"] = str((path.parent / e["path"]))
    return entries


def write_manifest(path, entries: Iterable[dict]) -> None:
    lines = [json.dumps({"format_version": FORMAT_VERSION}, sort_keys=True)]
    lines += [json.dumps(e, sort_keys=True) for e in entries]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# policy files


def parse_policy(text: str) -> PolicySpec:
    cfg = configparser.ConfigParser()
    cfg.read_string(text)
    if "policy" not in cfg:
        raise ValueError("policy file needs a [policy] section")
    sec = cfg["policy"]
    version = sec.getint("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported policy format_version {version}")
    known = {
        "format_version", "variant", "num_ops", "magnitude", "mag_beta", "mag_points",
        "mag_min", "mag_max", "mix", "alpha", "seed", "denylist",
    }
    unknown = set(sec) - known
    if unknown:
        raise ValueError(f"unknown policy keys: {sorted(unknown)}")
    mix = sec.get("mix", "none").strip()
    return PolicySpec(
        variant=Variant.parse(sec.get("variant", Variant.RA_TPP.value)),
        num_ops=sec.getint("num_ops", PolicySpec.num_ops),
        magnitude=sec.getfloat("magnitude", PolicySpec.magnitude),
        mag=MagAugmentConfig(
            beta=sec.getint("mag_beta", MagAugmentConfig.beta),
            points=sec.getint("mag_points", MagAugmentConfig.points),
            m_min=sec.getfloat("mag_min", MagAugmentConfig.m_min),
            m_max=sec.getfloat("mag_max", MagAugmentConfig.m_max),
        ),
        mix=None if mix.lower() in ("", "none") else MixKind.parse(mix),
        alpha=sec.getfloat("alpha", PolicySpec.alpha),
        seed=sec.getint("seed", PolicySpec.seed),
        denylist=parse_denylist(sec.get("denylist", "")),
    )


def parse_denylist(text: Optional[str]) -> frozenset:
    if not text:
        return frozenset()
    return frozenset(OpKind.parse(tok) for tok in text.split(",") if tok.strip())


def read_policy(path) -> PolicySpec:
    return parse_policy(Path(path).read_text())


def format_policy(spec: PolicySpec) -> str:
    deny = ", ".join(sorted(op.value for op in spec.denylist))
    return "\n".join(
        [
            "[policy]",
            f"format_version = {FORMAT_VERSION}",
            f"variant = {spec.variant.value}",
            f"num_ops = {spec.num_ops}",
            f"magnitude = {spec.magnitude!r}",
            f"mag_beta = {spec.mag.beta}",
            f"mag_points = {spec.mag.points}",
            f"mag_min = {spec.mag.m_min!r}",
            f"mag_max = {spec.mag.m_max!r}",
            f"mix = {spec.mix.value if spec.mix else 'none'}",
            f"alpha = {spec.alpha!r}",
            f"seed = {spec.seed}",
            f"denylist = {deny}",
            "",
        ]
    )
