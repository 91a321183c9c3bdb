import numpy as np
import pytest

from tempaug import BoxTrajectory, LabelMix, MagnitudeCurve, as_clip


class TestAsClip:
    def test_adds_channel_axis(self):
        c = as_clip(np.zeros((2, 8, 8), dtype=np.uint8))
        assert c.shape == (2, 8, 8, 1)

    @pytest.mark.parametrize(
        "shape, dtype",
        [
            ((1, 8, 8, 3), np.uint8),
            ((2, 7, 8, 3), np.uint8),
            ((2, 8, 8, 2), np.uint8),
            ((2, 8, 8, 3), np.float32),
            ((8, 8), np.uint8),
        ],
    )
    def test_rejects(self, shape, dtype):
        with pytest.raises(ValueError):
            as_clip(np.zeros(shape, dtype=dtype))


def test_label_mix_range():
    with pytest.raises(ValueError):
        LabelMix(0, 1, 1.5)
    assert LabelMix.single(4) == LabelMix(4, 4, 0.0)


class TestMagnitudeCurve:
    def test_values_interpolate_knots(self):
        c = MagnitudeCurve.from_knots([(0, 0.0), (2, 1.0), (4, 0.0)], 5)
        np.testing.assert_array_equal(c.values, [0.0, 0.5, 1.0, 0.5, 0.0])

    def test_knots_must_span_clip(self):
        with pytest.raises(ValueError):
            MagnitudeCurve.from_knots([(1, 0.0), (4, 0.0)], 5)

    def test_values_read_only(self):
        c = MagnitudeCurve.from_knots([(0, 0.0), (3, 1.0)], 4)
        with pytest.raises(ValueError):
            c.values[0] = 1.0


class TestBoxTrajectory:
    def test_linear_centers(self):
        tr = BoxTrajectory.linear(4, 4, (10, 10), (30, 50), 5)
        np.testing.assert_allclose(tr.centers[:, 0], [10, 15, 20, 25, 30])
        np.testing.assert_allclose(tr.centers[:, 1], [10, 20, 30, 40, 50])

    def test_extent_holds_outside(self):
        tr = BoxTrajectory.linear(2, 2, (4, 4), (8, 4), 6, 1, 3)
        np.testing.assert_allclose(tr.centers[:, 0], [4, 4, 6, 8, 8, 8])

    def test_inside(self):
        tr = BoxTrajectory.linear(4, 4, (2, 2), (14, 10), 3)
        assert tr.inside(16, 12)
        assert not tr.inside(15, 12)
