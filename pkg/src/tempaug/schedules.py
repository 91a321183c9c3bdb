"""Per-frame magnitude curves.

Four generators, from flat to most varied:

* :func:`static_schedule` - one magnitude for every frame (RandAugment).
* :func:`linear_schedule` - a straight line between a start and an end
  magnitude (RandAugment-T).
* :func:`t_plus_endpoints` - samples that line's endpoints around a base
  magnitude ``M`` as ``M - delta`` and ``M + delta`` with
  ``delta ~ U(0, M / 2)``.
* :func:`magaugment_schedule` - adds short triangular swings to a base curve.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import MIN_FRAMES, MagnitudeCurve
from .rng import RngStream

DEFAULT_BETA = 8
DEFAULT_POINTS = 2


class ShortClipWarning(UserWarning):
    """MagAugment skipped because the clip is too short to hold a swing."""


@dataclass(frozen=True)
class MagAugmentConfig:
    """Parameters of MagAugment swings.

    Attributes:
        beta: Largest half-duration ``j`` of a swing, in frames.
        points: Number of swings added to each curve.
        m_min: Lower bound of the sampled peak magnitude.
        m_max: Upper bound of the sampled peak magnitude.
    """

    beta: int = DEFAULT_BETA
    points: int = DEFAULT_POINTS
    m_min: float = 0.0
    m_max: float = 1.0

    def __post_init__(self):
        if int(self.beta) != self.beta or self.beta < 1:
            raise ValueError(f"beta must be an integer >= 1, got {self.beta}")
        if int(self.points) != self.points or self.points < 0:
            raise ValueError(f"points must be an integer >= 0, got {self.points}")
        if not 0.0 <= self.m_min <= self.m_max <= 1.0:
            raise ValueError(f"need 0 <= m_min <= m_max <= 1, got {self.m_min}, {self.m_max}")


def _check_unit(name, m):
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {m}")


def _check_frames(n):
    if n < MIN_FRAMES:
        raise ValueError(f"need at least {MIN_FRAMES} frames, got {n}")


def static_schedule(m: float, n: int) -> MagnitudeCurve:
    _check_unit("m", m)
    _check_frames(n)
    return MagnitudeCurve.from_knots([(0, m), (n - 1, m)], n)


def linear_schedule(m_start: float, m_end: float, n: int) -> MagnitudeCurve:
    """Magnitudes ``m_start + t / (n - 1) * (m_end - m_start)`` for ``t = 0..n-1``."""
    _check_unit("m_start", m_start)
    _check_unit("m_end", m_end)
    _check_frames(n)
    return MagnitudeCurve.from_knots([(0, m_start), (n - 1, m_end)], n)


def t_plus_endpoints(m: float, stream: RngStream) -> tuple[float, float]:
    """Sample ``(M - delta, M + delta)`` with ``delta ~ U(0, M / 2)``, clamped to ``[0, 1]``."""
    _check_unit("m", m)
    delta = stream.uniform(0.0, 0.5 * m)
    return max(m - delta, 0.0), min(m + delta, 1.0)


def magaugment_schedule(
    base: MagnitudeCurve, cfg: MagAugmentConfig, stream: RngStream
) -> MagnitudeCurve:
    """Add ``cfg.points`` triangular swings to ``base``.

    Swing ``k`` draws, from ``stream.derive(k)`` in this order, a peak
    ``M_p ~ U(m_min, m_max)``, a half-duration ``j`` uniform on
    ``{1..beta}`` and a peak frame ``p`` uniform on ``{j..n-1-j}``.  The
    curve is then redrawn over ``[p - j, p + j]`` as two straight segments
    through ``(p - j, cur[p - j])``, ``(p, M_p)`` and ``(p + j, cur[p + j])``,
    where ``cur`` already includes earlier swings.  ``j`` is clamped to
    ``(n - 1) // 2`` so short clips stay valid; the first and last frames are
    never displaced.

    Clips shorter than three frames cannot hold a swing: ``base`` is returned
    unchanged and a :class:`ShortClipWarning` is emitted.
    """
    n = len(base)
    if cfg.points == 0:
        return base
    half_cap = (n - 1) // 2
    if half_cap < 1:
        warnings.warn(f"clip of {n} frames is too short for MagAugment", ShortClipWarning, stacklevel=2)
        return base
    knots = dict(base.knots)
    cur = base
    for k in range(cfg.points):
        s = stream.derive(k)
        peak = s.uniform(cfg.m_min, cfg.m_max)
        j = min(s.integers(1, cfg.beta), half_cap)
        p = s.integers(j, n - 1 - j)
        lo, hi = p - j, p + j
        knots = {t: v for t, v in knots.items() if not lo < t < hi}
        knots[lo] = float(cur.values[lo])
        knots[p] = peak
        knots[hi] = float(cur.values[hi])
        cur = MagnitudeCurve.from_knots(knots.items(), n)
    return cur
