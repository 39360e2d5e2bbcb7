from __future__ import annotations

import math

import numpy as np
import pytest

from maxsobolev.grid import BoxDomain, GridFunction, TestFunctionSpec, sample
from maxsobolev.norms import (
    EpsilonGrid,
    equivalence_check,
    grand_norm,
    grand_sobolev_profiles,
    grand_sobolev_sum,
    grand_sobolev_sup,
    lq_norm,
    sobolev_norm,
)

SPECS = [
    TestFunctionSpec("sine", (3.0,)),
    TestFunctionSpec("bump", (1.0, 0.3, 0.5)),
    TestFunctionSpec("power", (0.6,)),
    TestFunctionSpec("linear", (-2.0,)),
]


class TestSobolevNorm:
    def test_linear(self, unit_interval) -> None:
        f = sample(TestFunctionSpec("linear", (1.0,)), unit_interval)
        assert sobolev_norm(f, 2.0) == pytest.approx(math.sqrt(1 / 3) + 1, rel=1e-3)

    def test_constant(self, unit_interval) -> None:
        f = GridFunction.constant(unit_interval, 3.0)
        assert sobolev_norm(f, 2.0) == pytest.approx(lq_norm(f, 2.0))

    def test_weighted(self, unit_interval) -> None:
        f = sample(TestFunctionSpec("linear", (1.0,)), unit_interval)
        w = GridFunction.constant(unit_interval, 4.0)
        assert sobolev_norm(f, 2.0, w) == pytest.approx(2 * sobolev_norm(f, 2.0))


class TestGrandSobolev:
    @pytest.fixture(autouse=True)
    def _setup(self) -> None:
        self.grid = EpsilonGrid(2.0, points=64)

    @pytest.mark.parametrize("spec", SPECS)
    def test_equivalence(self, unit_interval, spec) -> None:
        report = equivalence_check(sample(spec, unit_interval), 2.0,
                                   eps_grid=self.grid)
        assert report.passed
        assert 0.25 <= report.ratio <= 1 + 1e-12

    @pytest.mark.parametrize("spec", SPECS)
    def test_inner_forms_ordered(self, unit_interval, spec) -> None:
        f = sample(spec, unit_interval)
        power = grand_sobolev_sup(f, 2.0, eps_grid=self.grid, refine=False)
        plain = grand_sobolev_sup(f, 2.0, eps_grid=self.grid, inner="plain-sum",
                                  refine=False)
        total = grand_sobolev_sum(f, 2.0, eps_grid=self.grid, refine=False)
        assert power.value <= plain.value * (1 + 1e-12)
        assert plain.value <= total * (1 + 1e-12)

    def test_profiles_share_grid(self, unit_interval) -> None:
        f = sample(SPECS[0], unit_interval)
        sup, values, gradients = grand_sobolev_profiles(f, 2.0, eps_grid=self.grid)
        np.testing.assert_array_equal(sup.eps, values.eps)
        np.testing.assert_array_equal(sup.eps, gradients.eps)
        assert values.value == pytest.approx(
            grand_norm(f, 2.0, eps_grid=self.grid, refine=False).value)

    def test_constant_field(self, unit_interval) -> None:
        f = GridFunction.constant(unit_interval, 1.0)
        sup = grand_sobolev_sup(f, 2.0, eps_grid=self.grid, refine=False)
        assert sup.value == pytest.approx(
            grand_norm(f, 2.0, eps_grid=self.grid, refine=False).value)

    def test_refined_not_below_grid(self, unit_interval) -> None:
        f = sample(SPECS[1], unit_interval)
        coarse = grand_sobolev_sup(f, 2.0, eps_grid=self.grid, refine=False)
        fine = grand_sobolev_sup(f, 2.0, eps_grid=self.grid)
        assert fine.value >= coarse.value * (1 - 1e-12)

    def test_invalid_inner(self, unit_interval) -> None:
        f = GridFunction.constant(unit_interval, 1.0)
        with pytest.raises(ValueError, match="Inner norm"):
            grand_sobolev_sup(f, 2.0, inner="max")
        with pytest.raises(ValueError, match="Inner norm"):
            equivalence_check(f, 2.0, inner="max")


def _random_specs(rng: np.random.Generator, dim: int, count: int
                  ) -> list[TestFunctionSpec]:
    specs = []
    for k in range(count):
        kind = k % 4
        if kind == 0:
            specs.append(TestFunctionSpec("sine", (rng.uniform(0.5, 12),)))
        elif kind == 1:
            specs.append(TestFunctionSpec("linear", (rng.uniform(-5, 5),)))
        elif kind == 2:
            specs.append(TestFunctionSpec("power", (rng.uniform(0.5, 3),)))
        else:
            center = rng.uniform(0.3, 0.7, dim)
            specs.append(TestFunctionSpec(
                "bump", (rng.uniform(0.5, 2), rng.uniform(0.1, 0.3), *center)))
    return specs


@pytest.mark.slow
@pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
@pytest.mark.parametrize(("dim", "resolution"), [(1, 1024), (2, 128)])
def test_equivalence_random_catalog(q, dim, resolution) -> None:
    domain = BoxDomain.cube(0.0, 1.0, resolution, dim)
    eps_grid = EpsilonGrid(q, points=256)
    rng = np.random.default_rng(int(q * 10) + dim)
    for spec in _random_specs(rng, dim, 50):
        report = equivalence_check(sample(spec, domain), q, eps_grid=eps_grid)
        assert report.passed, spec
