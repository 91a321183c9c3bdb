"""
Drifting boxes and fading ratios
================================

The mix operators combine two clips.  Static kinds keep one box position
and one ratio; Float kinds move the box and fade the ratio between two
sampled endpoints.  The soft-label weight is always the exact share of
signal taken from the second clip.
"""

# %%
from pathlib import Path

import numpy as np

from tempaug import MixKind, RngStream, apply_mix, plan_mix
from tempaug.cli import contact_sheet
from tempaug.io import write_png

from _synthetic import moving_square, striped

out = Path(__file__).parent / "out"
a, b = moving_square(), striped()
n, h, w, _ = a.shape

# %%
# Every kind with its sampled weight for one seed.
for kind in MixKind:
    mixed, label = apply_mix(kind, a, 0, b, 1, alpha=1.0, stream=RngStream(5))
    print(f"{kind.value:20s} weight_b = {label.weight_b:.4f}")

# %%
# A FloatCutMix box travels in a straight line.  The plan holds its centers.
plan = plan_mix(MixKind.FLOAT_CUTMIX, n, h, w, 1.0, RngStream(5))
centers = plan.trajectory.centers
print("box", plan.region.box_w, "x", plan.region.box_h)
print("center x per frame:", np.round(centers[:, 0], 1))
mixed, _ = apply_mix(MixKind.FLOAT_CUTMIX, a, 0, b, 1, 1.0, RngStream(5))
write_png(contact_sheet(mixed), out / "float_cutmix.png")

# %%
# FloatCutMixUp blends inside the box, with a ratio that fades over time.
plan = plan_mix(MixKind.FLOAT_CUTMIXUP, n, h, w, 1.0, RngStream(6))
print("box", plan.region.box_w, "x", plan.region.box_h, "ratio per frame:", np.round(plan.lambdas.values, 3))
mixed, label = apply_mix(MixKind.FLOAT_CUTMIXUP, a, 0, b, 1, 1.0, RngStream(6))
print("weight_b:", round(label.weight_b, 4))
write_png(contact_sheet(mixed), out / "float_cutmixup.png")
