from __future__ import annotations

import math

import numpy as np
import pytest

from maxsobolev.grid import BoxDomain
from maxsobolev.maximal import DEFAULT_RATIO, MaximalConfig, radius_grid


class TestRadiusGrid:
    def test_snapped_radii(self) -> None:
        radii = radius_grid(BoxDomain((0.0,), (1.0,), 8), t=0.5)
        np.testing.assert_allclose(radii * 8, [1.5, 2.5, 3.5])

    @pytest.mark.parametrize("t", [0.05, 0.3, 1.0, math.inf])
    def test_bounded_and_increasing(self, unit_interval, t) -> None:
        radii = radius_grid(unit_interval, t)
        assert radii.size > 0
        assert np.all(np.diff(radii) > 0)
        assert radii[-1] <= min(t, unit_interval.diameter) + 1e-12
        h = unit_interval.min_spacing
        np.testing.assert_allclose((radii / h - 0.5) % 1, 0.0, atol=1e-9)

    def test_truncation_nests(self, unit_interval) -> None:
        short = radius_grid(unit_interval, 0.2)
        full = radius_grid(unit_interval)
        np.testing.assert_array_equal(full[:short.size], short)

    def test_below_half_spacing(self, unit_interval) -> None:
        assert radius_grid(unit_interval, t=1e-3).size == 0

    def test_invalid_ratio(self, unit_interval) -> None:
        with pytest.raises(ValueError, match="must exceed 1"):
            radius_grid(unit_interval, ratio=1.0)


class TestMaximalConfig:
    def test_default(self) -> None:
        cfg = MaximalConfig()
        assert cfg.truncation == math.inf
        assert cfg.radii is None
        assert cfg.window_shape == "cube"
        assert cfg.ratio == DEFAULT_RATIO

    @pytest.mark.parametrize("kwargs", [
        {"truncation": 0.0},
        {"truncation": -1.0},
        {"window_shape": "disk"},
        {"ratio": 1.0},
        {"ratio": 2.0},
        {"radii": ()},
        {"radii": (0.0, 0.1)},
        {"radii": (0.2, 0.1)},
        {"radii": (0.1, 0.1)},
        {"radii": (0.1, 0.5), "truncation": 0.3},
    ])
    def test_invalid(self, kwargs) -> None:
        with pytest.raises(ValueError):
            MaximalConfig(**kwargs)

    def test_explicit_radii(self, unit_interval) -> None:
        cfg = MaximalConfig.from_radii([0.1, 0.2], truncation=0.2)
        assert cfg.radii == (0.1, 0.2)
        np.testing.assert_array_equal(cfg.radii_for(unit_interval), [0.1, 0.2])

    def test_default_radii(self, unit_interval) -> None:
        cfg = MaximalConfig(truncation=0.25)
        np.testing.assert_array_equal(cfg.radii_for(unit_interval),
                                      radius_grid(unit_interval, 0.25))

    def test_replace(self) -> None:
        cfg = MaximalConfig(truncation=0.5).replace(window_shape="ball")
        assert cfg.truncation == 0.5
        assert cfg.window_shape == "ball"
