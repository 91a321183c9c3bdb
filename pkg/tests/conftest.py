import numpy as np
import pytest

from tempaug import RngStream


def random_clip(seed, n=6, h=12, w=16, c=3):
    return np.random.default_rng(seed).integers(0, 256, (n, h, w, c), dtype=np.uint8)


def watermark_a(n, h, w, c=3):
    """Values in [0, 99], distinct per (t, y, x) pattern; never 128."""
    t, y, x, ch = np.meshgrid(np.arange(n), np.arange(h), np.arange(w), np.arange(c), indexing="ij")
    return ((7 * x + y + 11 * t + ch) % 100).astype(np.uint8)


def watermark_b(n, h, w, c=3):
    """Values in [156, 255], so any pixel >= 156 must have come from clip b."""
    t, y, x, ch = np.meshgrid(np.arange(n), np.arange(h), np.arange(w), np.arange(c), indexing="ij")
    return (156 + (x + 3 * y + 5 * t + ch) % 100).astype(np.uint8)


@pytest.fixture
def stream():
    return RngStream(1234)


@pytest.fixture
def clip():
    return random_clip(0)


def make_dataset(root, count, n=8, h=16, w=20, seed=0):
    """Write ``count`` random CLIPRAW clips and a manifest under ``root``; returns the manifest path."""
    from tempaug import io

    root.mkdir(parents=True, exist_ok=True)
    entries = []
    for i in range(count):
        rel = f"raw/c{i:03d}.clipraw"
        io.write_clip(random_clip(seed + i, n=n, h=h, w=w), root / rel)
        entries.append({"clip_id": f"c{i:03d}", "path": rel, "label": i % 5})
    io.write_manifest(root / "manifest.jsonl", entries)
    return root / "manifest.jsonl"


def tree_bytes(root):
    """``{relative path: bytes}`` for every file under ``root``."""
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


# acceptance summary: one line per criterion at the end of the run
_CRITERIA = {}


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail):
        _CRITERIA[number] = (title, ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
