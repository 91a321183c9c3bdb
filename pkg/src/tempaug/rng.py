"""Splittable, counter-based random streams.

Every random decision in the package is drawn from an :class:`RngStream`
identified by a root seed and a derivation path.  Streams are backed by the
Philox counter-based generator keyed through ``numpy.random.SeedSequence``,
so a given ``(seed, path)`` produces the same draws on every platform and
child streams never depend on how many draws were taken from a sibling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """A deterministic stream of random draws.

    Args:
        seed: Root seed, a non-negative integer below 2**64.
        path: Derivation labels from the root, e.g. ``(clip_index, op_index)``.
    """

    seed: int
    path: Tuple[int, ...] = ()
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) <= _SEED_MASK:
            raise ValueError(f"seed must be in [0, 2**64), got {self.seed}")
        if any(int(p) < 0 for p in self.path):
            raise ValueError(f"path labels must be non-negative, got {self.path}")
        object.__setattr__(self, "path", tuple(int(p) for p in self.path))
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=self.path)
        object.__setattr__(self, "_gen", np.random.Generator(np.random.Philox(ss)))

    def derive(self, label: int) -> "RngStream":
        """Child stream; the result does not depend on draws taken from ``self``."""
        return RngStream(self.seed, self.path + (int(label),))

    def random(self) -> float:
        return float(self._gen.random())

    def uniform(self, lo: float, hi: float) -> float:
        """Draw from ``[lo, hi)``; returns ``lo`` exactly when ``lo == hi``."""
        if lo > hi:
            raise ValueError(f"uniform requires lo <= hi, got lo={lo}, hi={hi}")
        u = self._gen.random()
        if lo == hi:
            return float(lo)
        v = lo + (hi - lo) * u
        # lo + (hi - lo) * u can round up to hi
        return float(v) if v < hi else float(np.nextafter(hi, lo))

    def integers(self, lo: int, hi: int) -> int:
        """Inclusive integer draw on ``[lo, hi]`` as ``floor(uniform(lo, hi + 1))``."""
        if lo > hi:
            raise ValueError(f"integers requires lo <= hi, got lo={lo}, hi={hi}")
        return min(int(np.floor(self.uniform(lo, hi + 1))), hi)

    def beta(self, alpha: float) -> float:
        """Draw from the symmetric Beta(alpha, alpha)."""
        if not alpha > 0:
            raise ValueError(f"beta requires alpha > 0, got {alpha}")
        return float(self._gen.beta(alpha, alpha))

    def permutation(self, n: int) -> np.ndarray:
        """Uniform random permutation of ``range(n)``."""
        return self._gen.permutation(n)
