"""Provenance oracle for the mix operators.

Clip ``a`` carries values in [0, 99] and clip ``b`` values in [156, 255], so
the source of every output pixel can be read off its value.  Blend kinds
are probed by rendering the same plan as a pure paste, which exposes the
mask even where the mixing ratio is close to 0.
"""

import dataclasses

import numpy as np

from tempaug import BoxTrajectory, LambdaSchedule, MixKind, render_mix

FILL = 128


def source_mask(plan, out, clip_a, clip_b):
    """Boolean ``(n, H, W)`` mask of pixels the mix touched, read from pixel values."""
    kind = plan.kind
    if not kind.needs_partner:
        return out[..., 0] == FILL
    if kind.blends:
        out = render_mix(dataclasses.replace(plan, kind=MixKind.CUTMIX), clip_a, clip_b)
    return out[..., 0] >= 156


def box_bounds(mask):
    """Per frame ``(y0, y1, x0, x1)`` of the mask's bounding box, or ``None`` for an empty frame."""
    rows = mask.any(axis=2)
    cols = mask.any(axis=1)
    bounds = []
    for r, c in zip(rows, cols):
        ys, xs = np.flatnonzero(r), np.flatnonzero(c)
        bounds.append(None if len(ys) == 0 else (ys[0], ys[-1] + 1, xs[0], xs[-1] + 1))
    return bounds


def check_mix(plan, clip_a, clip_b, reported_weight, out=None, check_values=True):
    """Verify one rendered mix against the oracle; returns a list of failure messages."""
    problems = []
    if out is None:
        out = render_mix(plan, clip_a, clip_b)
    mask = source_mask(plan, out, clip_a, clip_b)
    n, h, w = mask.shape
    counts = np.count_nonzero(mask.reshape(n, -1), axis=1)
    bounds = box_bounds(mask)
    bw, bh = plan.region.box_w, plan.region.box_h

    # the mask is one full box per touched frame, over a contiguous extent
    touched = np.flatnonzero(counts)
    if len(touched) != plan.region.t_len or (len(touched) and touched[-1] - touched[0] != len(touched) - 1):
        problems.append(f"extent {touched.tolist()} is not {plan.region.t_len} contiguous frames")
    for t in touched:
        y0, y1, x0, x1 = bounds[t]
        if counts[t] != bw * bh or (y1 - y0, x1 - x0) != (bh, bw):
            problems.append(f"frame {t}: mask is not a full {bw}x{bh} box")
            break
    if plan.trajectory is not None and not plan.trajectory.inside(w, h):
        problems.append("box leaves the frame")

    # untouched pixels are bit-identical to clip a: every difference lies inside a box
    diff = out != clip_a
    inside = sum(int(np.count_nonzero(diff[t, b[0] : b[1], b[2] : b[3]])) for t, b in enumerate(bounds) if b)
    if int(np.count_nonzero(diff)) != inside:
        problems.append("untouched region changed")

    if plan.kind.family == "cutout":
        for t in touched:
            y0, y1, x0, x1 = bounds[t]
            if not np.all(out[t, y0:y1, x0:x1] == FILL):
                problems.append(f"frame {t}: cut-out pixels are not the fill value")
                break

    # blended pixels follow the per-frame ratio
    if check_values and plan.kind.blends:
        for t in touched:
            y0, y1, x0, x1 = bounds[t]
            lam = plan.lambdas.values[t]
            a = clip_a[t, y0:y1, x0:x1].astype(np.float64)
            b = clip_b[t, y0:y1, x0:x1].astype(np.float64)
            if not np.array_equal(out[t, y0:y1, x0:x1], np.floor((1 - lam) * a + lam * b + 0.5)):
                problems.append(f"frame {t}: blend differs from ratio {lam}")
                break

    # reported weight equals the counted signal fraction
    if not plan.kind.needs_partner:
        expected_weight = 0.0
    else:
        if int(counts.sum()) != plan.affected_volume:
            problems.append(f"counted {int(counts.sum())} pixels, plan says {plan.affected_volume}")
        lam = plan.lambdas.values if plan.kind.blends else np.ones(n)
        expected_weight = float(np.dot(counts, lam)) / (n * h * w)
    if abs(reported_weight - expected_weight) > 1e-12:
        problems.append(f"weight_b {reported_weight} != oracle {expected_weight}")
    return problems


def pinned(plan):
    """The same plan with the end center and the ratio spread collapsed onto the start values."""
    changes = {}
    if plan.trajectory is not None:
        tr = plan.trajectory
        start = tr.centers[tr.t_a]
        changes["trajectory"] = BoxTrajectory.linear(tr.box_w, tr.box_h, start, start, plan.n, tr.t_a, tr.t_b)
    if plan.lambdas is not None:
        lam = plan.lambdas
        changes["lambdas"] = LambdaSchedule.linear(lam.base, 0.0, plan.n, lam.t_a, lam.t_b)
    return dataclasses.replace(plan, kind=plan.kind.static_counterpart, **changes)
