"""
Single-clip temporal augmentations
==================================

Three ops rearrange a clip without touching its label: playing it
backwards, fading each frame into its mirror frame, and pasting a static
box from a shuffled copy of the clip.

Run with ``python demos/01_single_video_ops.py``; contact sheets go to
``demos/out``.
"""

# %%
from pathlib import Path

import numpy as np

from tempaug import RngStream, fade_lambda, frame_fade_in, video_cutmix, video_reverse
from tempaug.cli import contact_sheet
from tempaug.io import write_png

from _synthetic import moving_square

out = Path(__file__).parent / "out"
clip = moving_square()
n = len(clip)
print("clip shape:", clip.shape)

# %%
# Reversing twice gives the original clip back.
back = video_reverse(clip)
assert np.array_equal(video_reverse(back), clip)
write_png(np.concatenate([contact_sheet(clip), contact_sheet(back)]), out / "reverse.png")

# %%
# FrameFadeIn blends frame t with frame n - 1 - t.  The ratio climbs from 0
# to 0.5 in the middle of the clip and falls again.
print("fade ratios:", " ".join(f"{fade_lambda(t, n):.3f}" for t in range(n)))
faded = frame_fade_in(clip)
write_png(contact_sheet(faded), out / "fade_in.png")

# %%
# VideoCutMix pastes a box covering about a fifth of the frame from a
# frame-shuffled copy.  The box stays in place; only its contents jump.
mixed = video_cutmix(clip, RngStream(3))
changed = np.any(mixed != clip, axis=(0, 3))
ys, xs = np.nonzero(changed)
print(f"box spans rows {ys.min()}..{ys.max()}, cols {xs.min()}..{xs.max()}")
write_png(contact_sheet(mixed), out / "video_cutmix.png")
