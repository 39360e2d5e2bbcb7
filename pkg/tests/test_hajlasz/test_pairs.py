from __future__ import annotations

import math

import numpy as np
import pytest

from maxsobolev.core import DomainError
from maxsobolev.grid import BoxDomain, GridFunction, TestFunctionSpec, sample
from maxsobolev.hajlasz import (
    PairSample,
    absolute_value_check,
    hajlasz_constant,
    hajlasz_gradient,
    lipschitz_on_truncation_check,
    poincare_pointwise_check,
    sample_pairs,
    truncation_sets,
    verify_pointwise,
)
from maxsobolev.utilities.testing import brute_force_pairs


def _ball_inside(sample: PairSample, around_y: bool = False) -> np.ndarray:
    center = sample.y if around_y else sample.x
    radius = 3 * np.linalg.norm(sample.x - sample.y, axis=1)[:, None]
    lower, upper = np.asarray(sample.domain.lower), np.asarray(sample.domain.upper)
    return np.all((center - radius >= lower) & (center + radius <= upper), axis=1)


class TestSamplePairs:
    def test_reproducible(self, unit_square) -> None:
        first = sample_pairs(unit_square, count=200, seed=3)
        second = sample_pairs(unit_square, count=200, seed=3)
        np.testing.assert_array_equal(first.x_index, second.x_index)
        np.testing.assert_array_equal(first.y_index, second.y_index)
        other = sample_pairs(unit_square, count=200, seed=4)
        assert not np.array_equal(first.x_index, other.x_index)

    def test_random_pairs_admissible(self, unit_interval) -> None:
        pairs = sample_pairs(unit_interval, count=100, nearest=False)
        assert len(pairs) == 100
        assert pairs.n_admissible == 100
        assert np.all(_ball_inside(pairs))
        assert np.all(pairs.x_index != pairs.y_index)

    def test_nearest_neighbours(self, unit_square) -> None:
        pairs = sample_pairs(unit_square, count=50)
        assert len(pairs) == 50 + 2 * 32 * 31
        dist = np.linalg.norm(pairs.x[50:] - pairs.y[50:], axis=1)
        np.testing.assert_allclose(dist, 1 / 32)
        np.testing.assert_array_equal(pairs.admissible, _ball_inside(pairs))

    def test_symmetric(self, unit_interval) -> None:
        pairs = sample_pairs(unit_interval, count=100, symmetric=True)
        ok = pairs.admissible
        assert np.all(_ball_inside(pairs)[ok] & _ball_inside(pairs, around_y=True)[ok])

    def test_whole_space(self, unit_interval) -> None:
        pairs = sample_pairs(unit_interval, count=100, whole_space=True)
        assert pairs.n_admissible == len(pairs)
        assert not np.all(_ball_inside(pairs))

    def test_omega(self, unit_interval) -> None:
        pairs = sample_pairs(unit_interval, count=100, omega=((0.25,), (0.75,)))
        assert np.all((pairs.x >= 0.25) & (pairs.x <= 0.75))
        assert np.all((pairs.y >= 0.25) & (pairs.y <= 0.75))

    @pytest.mark.parametrize("omega", [((0.5,), (0.51,)), ((0.0, 0.0), (1.0, 1.0))])
    def test_invalid_omega(self, unit_interval, omega) -> None:
        with pytest.raises(DomainError):
            sample_pairs(unit_interval, omega=omega)

    def test_meta(self, unit_interval) -> None:
        meta = sample_pairs(unit_interval, count=10, seed=7).meta
        assert meta == {"seed": 7, "count": 10, "nearest": True, "whole_space": False,
                        "symmetric": False, "strategy": "uniform-admissible+nearest"}

    def test_diagonal_pair_rejected(self, unit_interval) -> None:
        with pytest.raises(DomainError):
            PairSample(unit_interval, np.array([1]), np.array([1]), np.array([True]))


class TestVerifyPointwise:
    @pytest.fixture(autouse=True)
    def _setup(self, unit_interval) -> None:
        self.domain = unit_interval
        self.pairs = sample_pairs(unit_interval, count=500)
        self.f = GridFunction.from_callable(unit_interval, lambda x: x)

    def test_linear_with_half(self) -> None:
        report = verify_pointwise(self.f, GridFunction.constant(self.domain, 0.5),
                                  self.pairs)
        assert report.minimal_constant == pytest.approx(1.0)
        assert not report.violations
        assert not report.blow_up
        assert report.n_pairs == len(self.pairs)
        assert report.n_admissible == self.pairs.n_admissible
        assert report.sample["seed"] == 0

    def test_violations_sorted_and_capped(self) -> None:
        g = GridFunction.from_callable(self.domain, lambda x: 0.1 + x)
        report = verify_pointwise(self.f, g, self.pairs, c=0.1)
        ratios = [v[2] for v in report.violations]
        assert 0 < len(ratios) <= 100
        assert ratios == sorted(ratios, reverse=True)
        assert ratios[0] == pytest.approx(report.minimal_constant)
        assert report.worst_pair == (report.violations[0][0], report.violations[0][1])

    def test_zero_over_zero(self) -> None:
        report = verify_pointwise(GridFunction.constant(self.domain, 1.0),
                                  GridFunction.constant(self.domain, 0.0), self.pairs)
        assert report.minimal_constant == 0.0
        assert not report.blow_up

    def test_nonzero_over_zero(self) -> None:
        report = verify_pointwise(self.f, GridFunction.constant(self.domain, 0.0),
                                  self.pairs)
        assert math.isinf(report.minimal_constant)
        assert report.blow_up

    def test_blow_up(self) -> None:
        f = sample(TestFunctionSpec("power", (0.5,)), self.domain)
        report = verify_pointwise(f, GridFunction.constant(self.domain, 0.01),
                                  self.pairs)
        assert report.minimal_constant > 10
        assert report.blow_up

    def test_bounded_by_all_pairs(self) -> None:
        f = sample(TestFunctionSpec("sine", (7.0,)), self.domain)
        g = GridFunction.constant(self.domain, 1.0)
        report = verify_pointwise(f, g, self.pairs)
        assert report.minimal_constant <= brute_force_pairs(f, g) * (1 + 1e-12)

    def test_maximal_gradient(self) -> None:
        f = sample(TestFunctionSpec("sine", (7.0,)), self.domain)
        report = verify_pointwise(f, hajlasz_gradient(f, 1.0), self.pairs)
        assert 0.25 < report.minimal_constant < 3.0

    def test_negative_gradient(self) -> None:
        with pytest.raises(DomainError, match="nonnegative"):
            verify_pointwise(self.f, GridFunction.constant(self.domain, -1.0),
                             self.pairs)

    def test_other_domain(self) -> None:
        other = self.domain.refine()
        with pytest.raises(DomainError, match="share"):
            verify_pointwise(GridFunction.constant(other, 1.0),
                             GridFunction.constant(other, 1.0), self.pairs)

    def test_no_admissible_pair(self) -> None:
        pairs = PairSample(self.domain, np.array([0]), np.array([63]),
                           np.array([False]))
        with pytest.raises(DomainError, match="no admissible"):
            verify_pointwise(self.f, GridFunction.constant(self.domain, 1.0), pairs)


class TestTruncation:
    @pytest.fixture(autouse=True)
    def _setup(self, unit_interval) -> None:
        self.pairs = sample_pairs(unit_interval, count=500)
        self.f = sample(TestFunctionSpec("sine", (7.0,)), unit_interval)
        g = hajlasz_gradient(self.f, 1.0)
        constant = verify_pointwise(self.f, g, self.pairs).minimal_constant
        self.g = constant * g

    def test_sets_nested(self) -> None:
        levels = np.quantile(self.g.values, [0.2, 0.5, 0.8])
        masks = [truncation_sets(self.g, k) for k in levels]
        assert np.all(masks[0] <= masks[1])
        assert np.all(masks[1] <= masks[2])

    def test_invalid_level(self) -> None:
        with pytest.raises(ValueError):
            truncation_sets(self.g, 0.0)

    @pytest.mark.parametrize("quantile", [0.25, 0.5, 0.9, 1.0])
    def test_lipschitz_on_truncation(self, quantile) -> None:
        k = float(np.quantile(self.g.values, quantile))
        report = lipschitz_on_truncation_check(self.f, self.g, k, self.pairs)
        assert report.passed
        assert report.ratio <= 1 + 1e-12

    def test_empty_truncation_set(self) -> None:
        k = float(np.min(self.g.values)) / 2
        report = lipschitz_on_truncation_check(self.f, self.g, k, self.pairs)
        assert report.passed
        assert report.constants["pairs"] == 0

    def test_absolute_value(self) -> None:
        report = absolute_value_check(self.f, self.g, self.pairs)
        assert report.passed
        assert report.constants["abs_f"] <= report.constants["f"] * (1 + 1e-12)


def test_two_dimensional_pairs() -> None:
    domain = BoxDomain.cube(0.0, 1.0, 16, dim=2)
    f = sample(TestFunctionSpec("bump", (1.0, 0.3, 0.5, 0.5)), domain)
    pairs = sample_pairs(domain, count=300)
    report = verify_pointwise(f, hajlasz_gradient(f, 1.0), pairs)
    assert math.isfinite(report.minimal_constant)
    assert len(report.worst_pair[0]) == 2


def _forward_constant(spec: TestFunctionSpec, resolution: int) -> float:
    domain = BoxDomain((0.0,), (1.0,), resolution)
    f = sample(spec, domain)
    poincare = poincare_pointwise_check(f, domain.inscribed_ball())
    g = hajlasz_gradient(f, hajlasz_constant(1, poincare))
    return verify_pointwise(f, g, sample_pairs(domain, count=10_000)).minimal_constant


@pytest.mark.slow
@pytest.mark.parametrize("spec", [
    TestFunctionSpec("sine", (3.0,)),
    TestFunctionSpec("linear", (2.0,)),
    TestFunctionSpec("bump", (1.0, 0.3, 0.5)),
])
def test_forward_characterization(spec) -> None:
    coarse = _forward_constant(spec, 1024)
    assert coarse <= 1.15
    if spec.catalog_id == "sine":
        fine = _forward_constant(spec, 2048)
        assert fine == pytest.approx(coarse, rel=0.15)


def test_jump_has_no_bounded_gradient() -> None:
    domain = BoxDomain((-1.0,), (1.0,), 1024)
    f = sample(TestFunctionSpec("indicator", (0.0, 2.0)), domain)
    report = verify_pointwise(f, GridFunction.constant(domain, 1.0),
                              sample_pairs(domain, count=1000))
    assert report.minimal_constant == pytest.approx(256.0)
    assert report.minimal_constant > 10
