from __future__ import annotations

import math

import numpy as np
import pytest

from maxsobolev.core import (
    EmbeddingReport,
    GrandNormResult,
    HajlaszReport,
    MuckenhouptEstimate,
    VerificationReport,
    to_jsonable,
)


class TestToJsonable:
    @pytest.mark.parametrize(("obj", "expected"), [
        (np.float64(1.5), 1.5),
        (np.int64(3), 3),
        (np.bool_(True), True),
        (math.inf, "inf"),
        (-math.inf, "-inf"),
        (math.nan, "nan"),
        ((1, 2.0), [1, 2.0]),
        (np.array([[1.0, math.inf]]), [[1.0, "inf"]]),
        ({1: np.float32(0.5)}, {"1": 0.5}),
        ("text", "text"),
    ])
    def test_conversion(self, obj, expected) -> None:
        assert to_jsonable(obj) == expected

    def test_bool_stays_bool(self) -> None:
        assert to_jsonable(True) is True


class TestEmbeddingReport:
    @pytest.mark.parametrize(("lhs", "rhs", "ratio", "passed"), [
        (1.0, 2.0, 0.5, True),
        (2.0, 2.0, 1.0, True),
        (2.0 + 1e-12, 2.0, 1.0 + 5e-13, True),
        (3.0, 2.0, 1.5, False),
        (0.0, 0.0, 0.0, True),
        (1.0, 0.0, math.inf, False),
    ])
    def test_ratio_and_passed(self, lhs, rhs, ratio, passed) -> None:
        report = EmbeddingReport("upper", lhs, rhs, 1e-9)
        assert report.ratio == pytest.approx(ratio)
        assert report.passed is passed

    def test_to_dict(self) -> None:
        data = EmbeddingReport("upper", 1.0, 0.0, 1e-9).to_dict()
        assert data["ratio"] == "inf"
        assert data["passed"] is False


class TestReports:
    def test_verification_report(self) -> None:
        report = VerificationReport("hedberg", True, 0.25, {"grad": 2.0},
                                    violations=((0.5, 1.2),))
        assert report.to_dict() == {
            "name": "hedberg", "passed": True, "ratio": 0.25,
            "constants": {"grad": 2.0}, "violations": [[0.5, 1.2]],
            "exclusions": []}

    def test_hajlasz_report(self) -> None:
        report = HajlaszReport(math.inf, 10, 8, ((0.0,), (1.0,)), blow_up=True,
                               sample={"seed": 0})
        data = report.to_dict()
        assert data["minimal_constant"] == "inf"
        assert data["worst_pair"] == [[0.0], [1.0]]
        assert data["sample"] == {"seed": 0}

    @pytest.mark.parametrize(("value", "divergent", "finite"), [
        (1.0, False, True), (math.inf, True, False), (5.0, True, False),
    ])
    def test_muckenhoupt_finite(self, value, divergent, finite) -> None:
        estimate = MuckenhouptEstimate(2.0, value, divergent, (0.5,), 0.25, 4,
                                       (0.25,), (value,))
        assert estimate.finite is finite
        assert estimate.to_dict()["argmax"] == {"center": [0.5], "half_width": 0.25}

    def test_grand_norm_result(self) -> None:
        result = GrandNormResult(2.0, 1.0, 0.5, np.array([0.5, 1.0]),
                                 np.array([1.0, 0.5]), trend="lower")
        assert result.to_csv_rows() == [(0.5, 1.0), (1.0, 0.5)]
        assert "profile" not in result.to_dict()
        assert result.to_dict(include_profile=True)["profile"] == [[0.5, 1.0],
                                                                    [1.0, 0.5]]
        assert result.to_dict()["n_profile"] == 2
