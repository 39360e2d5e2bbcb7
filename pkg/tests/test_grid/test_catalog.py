from __future__ import annotations

import numpy as np
import pytest

from maxsobolev.core import CatalogError
from maxsobolev.grid import (
    BoxDomain,
    TestFunctionSpec,
    coordinate_symbols,
    exact_gradient,
    list_entries,
    sample,
)


class TestTestFunctionSpec:
    def test_params_coerced(self) -> None:
        spec = TestFunctionSpec("power", [1])
        assert spec.params == (1.0,)
        assert isinstance(spec.params[0], float)

    def test_unknown_id(self) -> None:
        with pytest.raises(CatalogError, match="Unknown catalog id"):
            TestFunctionSpec("not-a-function")

    @pytest.mark.parametrize(("catalog_id", "params", "dim"), [
        ("constant", (), 1),
        ("bump", (1.0, 0.5, 0.5), 2),
        ("indicator", (0.0, 1.0), 2),
        ("abs", (1.0,), 1),
    ])
    def test_wrong_arity(self, catalog_id, params, dim) -> None:
        with pytest.raises(CatalogError, match="parameters"):
            TestFunctionSpec(catalog_id, params).validate(dim)

    def test_to_dict(self) -> None:
        assert TestFunctionSpec("sine", (2.0,)).to_dict() == {
            "id": "sine", "params": [2.0]}
        assert TestFunctionSpec("custom-expression", (), "x**2").to_dict() == {
            "id": "custom-expression", "params": [], "expression": "x**2"}


class TestSample:
    @pytest.fixture(autouse=True)
    def _setup(self) -> None:
        self.domain = BoxDomain((0.0,), (1.0,), 4)

    def test_linear(self) -> None:
        f = sample(TestFunctionSpec("linear", (2.0,)), self.domain)
        np.testing.assert_allclose(f.values, [0.25, 0.75, 1.25, 1.75])

    def test_constant_broadcast(self, unit_square) -> None:
        f = sample(TestFunctionSpec("constant", (3.0,)), unit_square)
        assert f.values.shape == (32, 32)
        np.testing.assert_array_equal(f.values, 3.0)

    def test_power(self) -> None:
        f = sample(TestFunctionSpec("power", (2.0,)), BoxDomain((-1.0,), (1.0,), 4))
        np.testing.assert_allclose(f.values, [0.5625, 0.0625, 0.0625, 0.5625])

    def test_abs_in_2d(self, unit_square) -> None:
        f = sample(TestFunctionSpec("abs"), unit_square)
        np.testing.assert_allclose(f.values, np.linalg.norm(unit_square.points(),
                                                            axis=-1))

    def test_bump(self) -> None:
        domain = BoxDomain((0.0,), (1.0,), 9)
        f = sample(TestFunctionSpec("bump", (2.0, 0.3, 0.5)), domain)
        assert f.values[4] == pytest.approx(2.0)
        assert f.values[0] == 0.0
        assert f.values[8] == 0.0
        assert np.all(f.values >= 0)

    @pytest.mark.parametrize("params", [(1.0, 0.0, 0.5), (1.0, -0.1, 0.5)])
    def test_bump_invalid_radius(self, params) -> None:
        with pytest.raises(CatalogError, match="radius"):
            sample(TestFunctionSpec("bump", params), self.domain)

    def test_indicator(self, unit_square) -> None:
        f = sample(TestFunctionSpec("indicator", (0.0, 0.5, 0.25, 1.0)), unit_square)
        assert f.values[0, 31] == 1.0
        assert f.values[31, 31] == 0.0
        assert f.values[0, 0] == 0.0
        assert f.values.sum() == 16 * 24

    def test_indicator_empty_interval(self) -> None:
        with pytest.raises(CatalogError, match="empty"):
            sample(TestFunctionSpec("indicator", (0.5, 0.5)), self.domain)

    @pytest.mark.parametrize(("catalog_id", "params", "expected"), [
        ("power-weight", (1.0,), [0.125, 0.375, 0.625, 0.875]),
        ("exp-decay-weight", (0.0,), [1.0, 1.0, 1.0, 1.0]),
    ])
    def test_weights(self, catalog_id, params, expected) -> None:
        f = sample(TestFunctionSpec(catalog_id, params), self.domain)
        np.testing.assert_allclose(f.values, expected)

    def test_custom_expression(self, unit_square) -> None:
        f = sample(TestFunctionSpec("custom-expression", (), "x^2 + y"), unit_square)
        x, y = unit_square.mesh()
        np.testing.assert_allclose(f.values, x ** 2 + y)

    def test_custom_expression_indexed_symbols(self) -> None:
        f = sample(TestFunctionSpec("custom-expression", (), "3*x0"), self.domain)
        np.testing.assert_allclose(f.values, 3 * self.domain.centers(0))

    @pytest.mark.parametrize(("text", "match"), [
        (None, "needs the expression"),
        ("", "needs the expression"),
        ("x +", "Cannot parse"),
        ("x + a", "unknown symbols"),
        ("y", "unknown symbols"),
    ])
    def test_custom_expression_invalid(self, text, match) -> None:
        with pytest.raises(CatalogError, match=match):
            sample(TestFunctionSpec("custom-expression", (), text), self.domain)

    def test_extended_power_singularity(self) -> None:
        domain = BoxDomain((0.0,), (1.0,), 4)
        f = sample(TestFunctionSpec("power", (-0.5,)), domain, extended=True)
        assert f.extended
        assert np.all(np.isfinite(f.values))

    def test_exact_gradient(self) -> None:
        (df,) = exact_gradient(TestFunctionSpec("sine", (2.0,)), self.domain)
        np.testing.assert_allclose(df.values, 2 * np.cos(2 * self.domain.centers(0)))
        assert df.kind == "gradient-component"


class TestListEntries:
    def test_sorted(self) -> None:
        ids = [entry.catalog_id for entry in list_entries()]
        assert ids == sorted(ids)
        assert {"abs", "bump", "constant", "custom-expression", "indicator", "linear",
                "power", "sine", "power-weight", "exp-decay-weight"} <= set(ids)

    def test_of_kind(self) -> None:
        ids = {entry.catalog_id for entry in list_entries("weight")}
        assert ids == {"exp-decay-weight", "power-weight"}

    def test_coordinate_symbols(self) -> None:
        assert [str(x) for x in coordinate_symbols(3)] == ["x0", "x1", "x2"]
        assert coordinate_symbols(2) is coordinate_symbols(2)
