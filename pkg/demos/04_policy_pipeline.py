"""
Policies and the command line
=============================

A policy draws N ops per clip, gives each a magnitude curve and can end
with a mix stage.  The same policy runs over a whole dataset from the
``tempaug`` command.
"""

# %%
import tempfile
from pathlib import Path

import numpy as np

from tempaug import MixKind, PolicySpec, RngStream, apply_policy, io, sample_policy
from tempaug.cli import main

from _synthetic import moving_square, striped

spec = PolicySpec(variant="RA_Tpp_Mag", num_ops=2, magnitude=0.4, mix=MixKind.FLOAT_CUBE_CUTMIXUP, seed=12)
print(io.format_policy(spec))

# %%
# The ops drawn for the first few clips.  Magnitude-free ops carry no curve.
for index in range(4):
    ops = sample_policy(spec, 16, spec.clip_stream(index).derive(0))
    print(index, [(op.value, None if c is None else round(float(c.values.mean()), 3)) for op, c in ops])

# %%
# Applying the policy.  Only the mix stage changes the label.
clip, partner = moving_square(), striped()
out, label = apply_policy(clip, 3, spec, partner=(partner, 8), index=0)
print(label)

# %%
# Same seed, same clip index: the same bytes.
again, _ = apply_policy(clip, 3, spec, partner=(partner, 8), index=0)
assert np.array_equal(out, again)

# %%
# The command line: write a small dataset, augment it, export curves.
with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    entries = []
    for i in range(4):
        io.write_clip(moving_square(seed=i), tmp / f"c{i}.clipraw")
        entries.append({"clip_id": f"c{i}", "path": f"c{i}.clipraw", "label": i})
    io.write_manifest(tmp / "manifest.jsonl", entries)
    (tmp / "policy.ini").write_text(io.format_policy(spec))
    main(["augment", str(tmp / "manifest.jsonl"), "--policy", str(tmp / "policy.ini"), "--out", str(tmp / "aug")])
    print((tmp / "aug" / "manifest.jsonl").read_text())
    main(["schedule", "--policy", str(tmp / "policy.ini"), "-n", "8", "--count", "1"])
