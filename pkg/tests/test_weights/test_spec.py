from __future__ import annotations

import math

import numpy as np
import pytest

from maxsobolev.core import CatalogError, DomainError
from maxsobolev.grid import BoxDomain, GridFunction, TestFunctionSpec
from maxsobolev.weights import CompositeWeight, WeightSpec, as_weight, sample_weight


class TestWeightSpec:
    @pytest.mark.parametrize(("family", "params"), [
        ("uniform", ()),
        ("constant", ()),
        ("constant", (0.0,)),
        ("power", (1.0, 2.0)),
        ("exp-decay", ()),
        ("shifted-power", (0.5,)),
        ("grid", (1.0,)),
        ("grid", ()),
    ])
    def test_invalid(self, family, params) -> None:
        with pytest.raises(CatalogError):
            WeightSpec(family, params)

    def test_grid_must_be_positive(self, unit_interval) -> None:
        with pytest.raises(DomainError):
            WeightSpec("grid", grid=GridFunction.constant(unit_interval, 0.0))

    @pytest.mark.parametrize(("catalog_id", "family"), [
        ("power-weight", "power"),
        ("exp-decay-weight", "exp-decay"),
        ("constant", "constant"),
    ])
    def test_from_catalog(self, catalog_id, family) -> None:
        weight = WeightSpec.from_catalog(TestFunctionSpec(catalog_id, (0.5,)))
        assert weight.family == family
        assert weight.params == (0.5,)

    def test_from_catalog_not_a_weight(self) -> None:
        with pytest.raises(CatalogError, match="not a weight family"):
            WeightSpec.from_catalog(TestFunctionSpec("sine", (1.0,)))

    @pytest.mark.parametrize(("weight", "center"), [
        (WeightSpec("power", (0.5,)), ()),
        (WeightSpec("shifted-power", (0.5, 0.2, 0.3)), (0.2, 0.3)),
        (WeightSpec("exp-decay", (1.0,)), None),
    ])
    def test_power_center(self, weight, center) -> None:
        assert weight.power_center == center

    def test_as_weight(self) -> None:
        assert as_weight(None).to_dict() == {"family": "constant", "params": [1.0]}
        weight = WeightSpec("power", (0.5,))
        assert as_weight(weight) is weight


class TestCompositeWeight:
    def test_power(self) -> None:
        weight = WeightSpec("power", (0.5,)).power(-2.0).power(0.5)
        assert weight.to_dict() == {"factors": [
            {"family": "power", "params": [0.5], "exponent": -1.0}]}

    def test_product(self) -> None:
        w = WeightSpec("constant", (2.0,)) * WeightSpec("power", (1.0,)).power(2.0)
        assert isinstance(w, CompositeWeight)
        assert len(w.factors) == 2

    def test_merged(self) -> None:
        w = (WeightSpec("constant", (2.0,)).power(3.0)
             * WeightSpec("power", (1.0,))
             * WeightSpec("power", (0.5,)).power(2.0)
             * WeightSpec("exp-decay", (1.0,))
             * WeightSpec("exp-decay", (0.5,)).power(-2.0))
        factors = {f.family: f.params for f, e in w.merged().factors}
        assert factors == {"constant": (8.0,), "power": (2.0,)}

    def test_merged_cancels(self) -> None:
        w = WeightSpec("power", (0.5,)) * WeightSpec("power", (0.5,)).power(-1.0)
        assert w.merged().factors == ()

    def test_product_with_other_type(self) -> None:
        with pytest.raises(TypeError):
            WeightSpec("power", (0.5,)).power(1.0) * 2.0


class TestSampleWeight:
    def test_constant(self, unit_square) -> None:
        w = sample_weight(WeightSpec("constant", (2.0,)).power(3.0), unit_square)
        np.testing.assert_allclose(w.values, 8.0)
        assert w.extended

    @pytest.mark.parametrize(("beta", "expected"), [
        (1.0, [0.5, 0.5]),
        (-0.5, [2.0, 2.0]),
        (0.0, [1.0, 1.0]),
    ])
    def test_power_cell_averages_at_singularity(self, beta, expected) -> None:
        domain = BoxDomain((-1.0,), (1.0,), 2)
        w = sample_weight(WeightSpec("power", (beta,)), domain)
        np.testing.assert_allclose(w.values, expected)

    def test_power_cell_averages(self) -> None:
        w = sample_weight(WeightSpec("power", (-0.5,)), BoxDomain((0.0,), (1.0,), 4))
        np.testing.assert_allclose(w.values[:2], [4.0, 8 * (math.sqrt(0.5) - 0.5)])

    @pytest.mark.parametrize("beta", [-1.0, -1.5])
    def test_power_not_integrable(self, beta) -> None:
        w = sample_weight(WeightSpec("power", (beta,)), BoxDomain((-1.0,), (1.0,), 4))
        assert np.isinf(w.values[1:3]).all()
        assert np.isfinite(w.values[[0, 3]]).all()

    def test_shifted_power_in_2d(self) -> None:
        domain = BoxDomain.cube(0.0, 1.0, 5, dim=2)
        w = sample_weight(WeightSpec("shifted-power", (-1.0, 0.5, 0.5)), domain)
        quarter = float(np.linalg.norm(domain.spacing / 4))
        assert w.values[2, 2] == pytest.approx(1 / quarter)
        assert w.values[0, 0] == pytest.approx(1 / np.hypot(0.4, 0.4))

    def test_singular_center_in_2d(self) -> None:
        domain = BoxDomain.cube(-1.0, 1.0, 17, dim=2)
        w = sample_weight(WeightSpec("power", (-2.0,)), domain)
        assert math.isinf(w.values[8, 8])
        assert np.isfinite(np.delete(w.values.ravel(), 8 * 17 + 8)).all()

    def test_shifted_power_wrong_dimension(self, unit_square) -> None:
        with pytest.raises(DomainError):
            sample_weight(WeightSpec("shifted-power", (0.5, 0.5)), unit_square)

    def test_exp_decay(self, unit_interval) -> None:
        w = sample_weight(WeightSpec("exp-decay", (2.0,)), unit_interval)
        np.testing.assert_allclose(w.values, np.exp(-2 * unit_interval.centers(0)))

    def test_underflow(self) -> None:
        with pytest.raises(DomainError, match="not positive"):
            sample_weight(WeightSpec("exp-decay", (1e4,)),
                          BoxDomain((0.0,), (100.0,), 8))

    def test_grid(self, unit_interval) -> None:
        grid = GridFunction.from_callable(unit_interval, lambda x: 1 + x)
        w = sample_weight(WeightSpec("grid", grid=grid).power(2.0), unit_interval)
        np.testing.assert_allclose(w.values, grid.values ** 2)

    def test_grid_on_other_domain(self, unit_interval) -> None:
        grid = GridFunction.constant(unit_interval, 1.0)
        with pytest.raises(DomainError):
            sample_weight(WeightSpec("grid", grid=grid), unit_interval.refine())
