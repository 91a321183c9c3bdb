"""Command-line interface.

::

    tempaug augment MANIFEST --policy P.ini --out DIR [--seed S] [--jobs J] [--format png|clipraw]
    tempaug schedule --policy P.ini --frames N --count K [--out curves.csv]
    tempaug preview CLIP --policy P.ini --out sheet.png [--partner CLIP_B]

Output depends only on the manifest, the policy file and the seed; the
number of worker processes never changes a byte of it.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import io
from .policy import CLIP_BRANCH, PAIRING_BRANCH, PolicySpec, apply_policy, sample_curve
from .rng import RngStream

log = logging.getLogger("tempaug")

SCHEDULE_BRANCH = 2
PREVIEW_PANELS = 8
_EXT = {"clipraw": ".clipraw", "png": ""}


def _load_spec(args) -> PolicySpec:
    spec = io.read_policy(args.policy) if args.policy else PolicySpec()
    changes = {}
    if getattr(args, "seed", None) is not None:
        changes["seed"] = args.seed
    if getattr(args, "denylist", None):
        changes["denylist"] = spec.denylist | io.parse_denylist(args.denylist)
    return dataclasses.replace(spec, **changes) if changes else spec


# --------------------------------------------------------------------------
# augment


def _augment_one(task):
    index, entry, partner, spec, out_dir, fmt = task
    clip_id = entry["clip_id"]
    try:
        clip = io.read_clip(entry["resolved_path"])
        pair = None
        if partner is not None:
            pair = (io.read_clip(partner["resolved_path"]), int(partner["label"]))
        out, mix = apply_policy(clip, int(entry["label"]), spec, pair, index=index)
        rel = f"clips/{clip_id}{_EXT[fmt]}"
        io.write_clip(out, Path(out_dir) / rel, fmt)
    except Exception as exc:  # reported per clip, the batch carries on
        return {"clip_id": clip_id, "error": f"{type(exc).__name__}: {exc}"}
    n, h, w, c = out.shape
    return {
        "clip_id": clip_id,
        "path": rel,
        "label": mix.label_a,
        **mix.as_dict(),
        "seed": spec.seed,
        "seed_path": [CLIP_BRANCH, index],
        "n": n,
        "H": h,
        "W": w,
        "C": c,
    }


def cmd_augment(manifest, spec: PolicySpec, out_dir, jobs: int = 1, fmt: str = "clipraw") -> int:
    """Augment every clip in ``manifest`` into ``out_dir``; returns the exit code."""
    entries = io.read_manifest(manifest)
    for e in entries:
        if "/" in str(e["clip_id"]) or str(e["clip_id"]) in ("", ".", ".."):
            raise ValueError(f"clip_id {e['clip_id']!r} is not a valid file name")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "policy.ini").write_text(io.format_policy(spec))

    partners = [None] * len(entries)
    if spec.mix is not None and spec.mix.needs_partner and entries:
        perm = RngStream(spec.seed).derive(PAIRING_BRANCH).permutation(len(entries))
        partners = [entries[int(j)] for j in perm]
    tasks = [(i, e, partners[i], spec, str(out_dir), fmt) for i, e in enumerate(entries)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_augment_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_augment_one(t) for t in tasks]

    errors = [r for r in results if "error" in r]
    io.write_manifest(out_dir / "manifest.jsonl", [r for r in results if "error" not in r])
    err_path = out_dir / "errors.jsonl"
    if errors:
        err_path.write_text("".join(json.dumps(e, sort_keys=True) + "\n" for e in errors))
        for e in errors:
            log.error("%s: %s", e["clip_id"], e["error"])
        return 1
    if err_path.exists():
        err_path.unlink()
    return 0


# --------------------------------------------------------------------------
# schedule


def schedule_rows(spec: PolicySpec, n: int, count: int) -> List[str]:
    rows = ["sample_id,t,m_t"]
    root = RngStream(spec.seed).derive(SCHEDULE_BRANCH)
    for k in range(count):
        curve = sample_curve(spec, n, root.derive(k))
        rows += [f"{k},{t},{m:.9f}" for t, m in enumerate(curve.values)]
    return rows


def cmd_schedule(spec: PolicySpec, n: int, count: int, out_csv=None) -> int:
    text = "\n".join(schedule_rows(spec, n, count)) + "\n"
    if out_csv in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out_csv).parent.mkdir(parents=True, exist_ok=True)
        Path(out_csv).write_text(text)
    return 0


# --------------------------------------------------------------------------
# preview


def panel_indices(n: int, panels: int = PREVIEW_PANELS) -> np.ndarray:
    return np.unique(np.round(np.linspace(0, n - 1, min(panels, n))).astype(int))


def contact_sheet(clip, panels: int = PREVIEW_PANELS) -> np.ndarray:
    """Evenly spaced frames of ``clip`` side by side."""
    return np.concatenate(list(clip[panel_indices(len(clip), panels)]), axis=1)


def cmd_preview(clip_path, spec: PolicySpec, out_png, partner_path=None, label: int = 0) -> int:
    clip = io.read_clip(clip_path)
    partner = None
    if partner_path is not None:
        partner = (io.read_clip(partner_path), label + 1)
    out, _ = apply_policy(clip, label, spec, partner)
    io.write_png(contact_sheet(out), out_png)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempaug", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--policy", help="policy file (INI); defaults to RA_Tpp, N=2, M=0.3")
        p.add_argument("--seed", type=int, help="override the policy's seed")
        p.add_argument("--denylist", help="comma-separated ops to remove, e.g. VideoReverse,FrameFadeIn")

    p = sub.add_parser("augment", help="augment every clip of a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=sorted(_EXT), default="clipraw")
    common(p)

    p = sub.add_parser("schedule", help="export sampled magnitude curves as CSV")
    p.add_argument("--frames", "-n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--out", default="-")
    common(p)

    p = sub.add_parser("preview", help="write a contact sheet of one augmented clip")
    p.add_argument("clip")
    p.add_argument("--out", required=True)
    p.add_argument("--partner", help="second clip for two-clip mix stages")
    common(p)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        spec = _load_spec(args)
        if args.command == "augment":
            return cmd_augment(args.manifest, spec, args.out, args.jobs, args.format)
        if args.command == "schedule":
            return cmd_schedule(spec, args.frames, args.count, args.out)
        return cmd_preview(args.clip, spec, args.out, args.partner)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
