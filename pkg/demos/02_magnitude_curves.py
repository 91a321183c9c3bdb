"""
Magnitude curves
================

A pixel op's strength can change from frame to frame.  This demo samples
static, linear and MagAugment curves and prints where the curves bend.
"""

# %%
import numpy as np

from tempaug import MagAugmentConfig, PolicySpec, RngStream, linear_schedule, sample_curve, static_schedule
from tempaug.cli import schedule_rows

n = 32

# %%
# A static curve applies one magnitude evenly; a linear one interpolates
# between two endpoint magnitudes.
print("static:", static_schedule(0.3, 4).values)
print("linear:", np.round(linear_schedule(0.1, 0.7, 7).values, 3))

# %%
# RandAugment-T+ picks endpoints M - d and M + d with d ~ U(0, M / 2).
spec = PolicySpec(variant="RA_T_plus", magnitude=0.5)
for k in range(3):
    v = sample_curve(spec, n, RngStream(7, (k,))).values
    print(f"T+ curve {k}: {v[0]:.3f} -> {v[-1]:.3f}")

# %%
# MagAugment adds short swings on top of that line.  Each swing adds at most
# three knots, so with two swings a curve has at most eight.
spec = PolicySpec(variant="RA_Tpp_Mag", magnitude=0.5, mag=MagAugmentConfig(beta=8, points=2))
for k in range(5):
    curve = sample_curve(spec, n, RngStream(7, (k,)))
    knots = ", ".join(f"{t}:{m:.2f}" for t, m in curve.knots)
    spark = "".join(" .:-=+*#"[min(7, int(m * 8))] for m in curve.values)
    print(f"{spark}  knots {knots}")

# %%
# The same curves as CSV, ready for plotting.
rows = schedule_rows(spec, n, 2)
print("\n".join(rows[:4]), "\n...")
