"""Scenarios runnable from the command line.

Every scenario declares the configuration fields it accepts through
``required_fields`` and is registered under its ``name`` upon creation, see
:class:`maxsobolev.core.ScenarioBase`.
"""
from __future__ import annotations

import logging
import math
import time
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.cli.config import (
    DOMAIN,
    FUNCTION,
    GRANDIZER,
    NUMBER,
    Q,
    REQUIRED_WEIGHT,
    WEIGHT,
    build,
    build_domain,
    build_function,
    build_weight,
    positive,
)
from maxsobolev.core.base_classes import ScenarioBase
from maxsobolev.core.reports import ScenarioOutcome
from maxsobolev.core.requirement import FieldRequirement, SectionRequirement
from maxsobolev.embeddings.inequalities import (
    chain_check,
    local_integrability_check,
    local_sobolev_check,
    sobolev_embedding_check,
    upper_embedding_check,
)
from maxsobolev.embeddings.probe import maximal_boundedness_probe, stress_family
from maxsobolev.grid.catalog import sample
from maxsobolev.grid.domains import Ball, BoxDomain
from maxsobolev.grid.functions import GridFunction, gradient_magnitude
from maxsobolev.hajlasz.converse import derivative_bound_check
from maxsobolev.hajlasz.pairs import sample_pairs, verify_pointwise
from maxsobolev.hajlasz.potentials import (
    hajlasz_constant,
    hajlasz_gradient,
    hedberg_check,
    mean_oscillation_check,
    poincare_pointwise_check,
)
from maxsobolev.maximal.config import MaximalConfig
from maxsobolev.maximal.kernels import (
    ball_maximal,
    comparability_check,
    cube_maximal,
    maximal_field,
)
from maxsobolev.norms.lebesgue import EpsilonGrid, grand_norm, lq_norm
from maxsobolev.norms.sobolev import sobolev_norm
from maxsobolev.utilities.utilities import parallel_map
from maxsobolev.weights.muckenhoupt import (
    CubeFamily,
    aq_constant,
    aq_properties_check,
)
from maxsobolev.weights.spec import sample_weight

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

    from maxsobolev.weights.spec import WeightSpec

__all__ = [
    "AqScenario",
    "BenchScenario",
    "EmbedScenario",
    "GrandNormScenario",
    "HajlaszScenario",
    "HedbergScenario",
    "MaximalScenario",
    "NormScenario",
    "PoincareScenario",
    "ProbeScenario",
]

_logger = logging.getLogger(__name__)


def _count(value: object) -> bool:
    return value > 0


def _int_list(value: list) -> bool:
    return bool(value) and all(isinstance(v, int) and not isinstance(v, bool)
                               and v > 0 for v in value)


def _number_list(value: list) -> bool:
    return all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)


EPS_POINTS = FieldRequirement("eps_points", int, "Points of the ε grid", hard=False,
                              check=_count)
NORMALIZE = FieldRequirement("normalize", bool, "Divide integrals by |Ω|",
                             hard=False)
TRUNCATION = FieldRequirement("t", NUMBER, "Truncation of the maximal operator",
                              hard=False, check=positive)
RADII = FieldRequirement("radii", list, "Explicit radius grid", hard=False,
                         check=_number_list)
SEED = FieldRequirement("seed", int, "Seed of the random generator", hard=False)
COUNT = FieldRequirement("count", int, "Number of samples", hard=False, check=_count)
SLACK = FieldRequirement("slack", NUMBER, "Relative allowance", hard=False,
                         check=lambda v: v >= 0)
_BOX_FIELDS = (
    FieldRequirement("lower", list, "Lower corner", check=_number_list),
    FieldRequirement("upper", list, "Upper corner", check=_number_list),
)


def _default(config: Mapping[str, object], key: str, default: object) -> object:
    value = config.get(key)
    return default if value is None else value


def _field_rows(f: GridFunction) -> list[tuple[float, ...]]:
    points = f.domain.points().reshape(-1, f.domain.dim)
    return [(*map(float, p), float(v)) for p, v in zip(points, f.flat)]


def _field_header(dim: int) -> tuple[str, ...]:
    return (*(f"x{k}" for k in range(dim)), "value")


def _check_row(name: str, report: object) -> tuple[str, bool, float]:
    return (name, bool(report.passed), float(report.ratio))


class GridScenario(ScenarioBase):
    """Scenario on a computational box."""

    required_fields = (DOMAIN,)

    def __init__(self, config: dict[str, object], output_dir: Path) -> None:
        super().__init__(config, output_dir)
        self.domain = build_domain(config["domain"])

    def weights(self) -> tuple[WeightSpec | None, WeightSpec | None]:
        """Configured weight and grandizer, None where absent."""
        return (build_weight(self.config.get("weight")),
                build_weight(self.config.get("grandizer"), "grandizer"))

    def sampled_weights(self) -> tuple[GridFunction | None, GridFunction | None]:
        """Weight and grandizer sampled on the domain."""
        return tuple(None if w is None else build(name, sample_weight, w, self.domain)
                     for name, w in zip(("weight", "grandizer"), self.weights()))

    def eps_grid(self, q: float) -> EpsilonGrid:
        """ε grid of the grand norms."""
        return EpsilonGrid(q, points=_default(self.config, "eps_points", 2048))

    def maximal_config(self) -> MaximalConfig:
        """Maximal operator of the configured truncation and radius grid."""
        radii = self.config.get("radii")
        return build("radii", MaximalConfig,
                     truncation=_default(self.config, "t", math.inf),
                     radii=None if radii is None else tuple(radii),
                     window_shape=_default(self.config, "window_shape", "cube"))


class FieldScenario(GridScenario):
    """Scenario on a catalog field."""

    required_fields = (FUNCTION,)

    def __init__(self, config: dict[str, object], output_dir: Path) -> None:
        super().__init__(config, output_dir)
        self.spec = build_function(config["function"], self.domain.dim)
        self.f = build("function", sample, self.spec, self.domain)

    def header(self) -> dict[str, object]:
        """Report entries describing the configured field."""
        return {"scenario": self.name, "function": self.spec,
                "domain": {"lower": self.domain.lower, "upper": self.domain.upper,
                           "resolution": self.domain.resolution}}


class NormScenario(FieldScenario):
    """Weighted Lebesgue and Sobolev norms of a field."""

    name = "norm"
    required_fields = (Q, WEIGHT)

    def run(self) -> ScenarioOutcome:
        q = float(self.config["q"])
        w, _ = self.sampled_weights()
        report = {**self.header(), "q": q, "lq_norm": lq_norm(self.f, q, w)}
        if min(self.domain.resolution) >= 3:  # noqa: PLR2004
            report["sobolev_norm"] = sobolev_norm(self.f, q, w)
        return ScenarioOutcome(passed=True, report=report)


class GrandNormScenario(FieldScenario):
    """Generalized grand Lebesgue norm with its ε-profile."""

    name = "grand-norm"
    required_fields = (Q, WEIGHT, GRANDIZER, EPS_POINTS, NORMALIZE)

    def run(self) -> ScenarioOutcome:
        q = float(self.config["q"])
        w, a = self.sampled_weights()
        result = grand_norm(self.f, q, w, a, self.eps_grid(q),
                            normalize=bool(self.config.get("normalize")))
        finite = math.isfinite(result.value)
        return ScenarioOutcome(
            passed=finite, report={**self.header(), "result": result},
            checks=(("finite grand norm", finite, result.value),),
            tables={"profile.csv": (("eps", "value"), result.to_csv_rows())})


class MaximalScenario(FieldScenario):
    """Maximal function of a field and the ball-cube comparability check."""

    name = "maximal"
    required_fields = (
        TRUNCATION, RADII,
        FieldRequirement("window_shape", str, "ball or cube", hard=False),
    )

    def run(self) -> ScenarioOutcome:
        cfg = self.maximal_config()
        m = maximal_field(self.f, cfg)
        report = comparability_check(self.f, cfg)
        tables = {}
        if self.domain.dim <= 2:  # noqa: PLR2004
            tables["maximal.csv"] = (_field_header(self.domain.dim), _field_rows(m))
        return ScenarioOutcome(
            passed=report.passed,
            report={**self.header(), "max": float(np.max(m.values)),
                    "radii": cfg.radii_for(self.domain), "comparability": report},
            checks=(_check_row(report.name, report),), tables=tables)


class AqScenario(GridScenario):
    """Muckenhoupt constant of a weight and its elementary properties."""

    name = "aq"
    required_fields = (
        REQUIRED_WEIGHT, Q,
        FieldRequirement("p", NUMBER, "Larger exponent of the inclusion check",
                         hard=False),
        FieldRequirement("alpha", NUMBER, "Exponent of the power check", hard=False),
        FieldRequirement("center_step", int, "Lattice step of the cube centers",
                         hard=False, check=_count),
        FieldRequirement("half_widths", list, "Half-widths in cells", hard=False,
                         check=_int_list),
    )

    def run(self) -> ScenarioOutcome:
        q = float(self.config["q"])
        w, _ = self.weights()
        widths = self.config.get("half_widths")
        family = CubeFamily(self.config.get("center_step"),
                            None if widths is None else tuple(widths))
        estimate = build("domain", aq_constant, w, q, self.domain, family)
        checks = [("finite A_q estimate", estimate.finite, estimate.value)]
        report = {"scenario": self.name, "weight": w, "estimate": estimate}
        p, alpha = self.config.get("p"), self.config.get("alpha")
        if estimate.finite and p is not None and alpha is not None:
            properties = build("p", aq_properties_check, w, q, float(p),
                               float(alpha), self.domain, family)
            report["properties"] = properties
            checks.append(_check_row(properties.name, properties))
        return ScenarioOutcome(passed=all(c[1] for c in checks), report=report,
                               checks=tuple(checks))


class HajlaszScenario(FieldScenario):
    """Pointwise Hajłasz inequality for the maximal-gradient construction."""

    name = "hajlasz-verify"
    required_fields = (
        FieldRequirement("c", NUMBER, "Constant of the gradient", hard=False,
                         check=lambda v: v >= 0),
        COUNT, SEED, SLACK, TRUNCATION, RADII,
        FieldRequirement("nearest", bool, "Add nearest-neighbour pairs", hard=False),
        FieldRequirement("symmetric", bool, "Ball condition for both points",
                         hard=False),
        FieldRequirement("whole_space", bool, "Every pair is admissible", hard=False),
        FieldRequirement("poincare_samples", int, "Points of the Poincaré estimate",
                         hard=False, check=_count),
    )

    def run(self) -> ScenarioOutcome:
        seed = _default(self.config, "seed", 0)
        c = self.config.get("c")
        report = {**self.header()}
        if c is None:
            ball = self.domain.inscribed_ball()
            poincare = poincare_pointwise_check(
                self.f, ball, _default(self.config, "poincare_samples", 256), seed)
            c = hajlasz_constant(self.domain.dim, poincare)
            report["poincare_constant"] = poincare
        report["c"] = float(c)
        g = hajlasz_gradient(self.f, float(c), self.maximal_config())
        sample = build("domain", sample_pairs, self.domain,
                       _default(self.config, "count", 10_000), seed,
                       nearest=_default(self.config, "nearest", True),
                       whole_space=bool(self.config.get("whole_space")),
                       symmetric=bool(self.config.get("symmetric")))
        result = verify_pointwise(self.f, g, sample)
        bound = 1 + _default(self.config, "slack", 0.15)
        passed = result.minimal_constant <= bound
        report["pointwise"] = result
        checks = [("pointwise inequality", passed, result.minimal_constant / bound)]
        m = result.minimal_constant
        if self.domain.dim == 1 and passed and 0 < m:
            converse = derivative_bound_check(self.f, g, m, sample)
            report["derivative_bound"] = converse
            checks.append(_check_row(converse.name, converse))
        rows = [(*x, *y, ratio) for x, y, ratio in result.violations]
        if result.worst_pair is not None:
            rows.append((*result.worst_pair[0], *result.worst_pair[1], m))
        n = self.domain.dim
        header = (*(f"x{k}" for k in range(n)), *(f"y{k}" for k in range(n)), "ratio")
        return ScenarioOutcome(passed=all(check[1] for check in checks), report=report,
                               checks=tuple(checks),
                               tables={"pairs.csv": (header, rows)})


class HedbergScenario(FieldScenario):
    """Hedberg bound of the Riesz potential at random balls."""

    name = "hedberg"
    required_fields = (COUNT, SEED, SLACK, TRUNCATION)

    def run(self) -> ScenarioOutcome:
        rng = np.random.default_rng(_default(self.config, "seed", 0))
        count = _default(self.config, "count", 50)
        t_max = _default(self.config, "t", self.domain.diameter / 4)
        lower, upper = np.asarray(self.domain.lower), np.asarray(self.domain.upper)
        centers = rng.uniform(lower, upper, (count, self.domain.dim))
        radii = rng.uniform(0.1, 1.0, count) * t_max
        grad = gradient_magnitude(self.f)
        slack = _default(self.config, "slack", 0.05)
        reports = parallel_map(
            lambda k: hedberg_check(self.f, centers[k], float(radii[k]), slack, grad),
            range(count))
        worst = max(reports, key=lambda r: r.ratio)
        passed = all(r.passed for r in reports)
        return ScenarioOutcome(
            passed=passed,
            report={**self.header(), "checks": count, "worst": worst,
                    "failed": sum(not r.passed for r in reports)},
            checks=(("Hedberg estimate", passed, worst.ratio),),
            tables={"hedberg.csv": (
                (*(f"x{k}" for k in range(self.domain.dim)), "t", "ratio"),
                [(*map(float, x), float(t), r.ratio)
                 for x, t, r in zip(centers, radii, reports)])})


class PoincareScenario(FieldScenario):
    """Empirical constants of the pointwise and the integral Poincaré estimates."""

    name = "poincare"
    required_fields = (
        SectionRequirement("ball", (
            FieldRequirement("center", list, "Center", check=_number_list),
            FieldRequirement("radius", NUMBER, "Radius", check=positive),
        ), "Ball of the estimate, by default the inscribed ball", hard=False),
        COUNT, SEED,
    )

    def run(self) -> ScenarioOutcome:
        section = self.config.get("ball")
        ball = (self.domain.inscribed_ball() if section is None else
                build("ball", Ball, section["center"], section["radius"]))
        constant = build("ball", poincare_pointwise_check, self.f, ball,
                         _default(self.config, "count", 256),
                         _default(self.config, "seed", 0))
        oscillation = mean_oscillation_check(self.f, ball)
        finite = math.isfinite(constant)
        return ScenarioOutcome(
            passed=finite,
            report={**self.header(), "ball": {"center": ball.center,
                                              "radius": ball.radius},
                    "pointwise_constant": constant,
                    "oscillation_constant": oscillation},
            checks=(("finite Poincaré constant", finite, constant),))


class EmbedScenario(FieldScenario):
    """Embedding chain, Sobolev embedding and local integrability of a field."""

    name = "embed"
    required_fields = (
        Q, WEIGHT, GRANDIZER, EPS_POINTS,
        FieldRequirement("delta", NUMBER, "Exponent with a^δ in A_q", hard=False,
                         check=positive),
        SectionRequirement("subbox", _BOX_FIELDS, "Box E of the local estimates",
                           hard=False),
    )

    def run(self) -> ScenarioOutcome:
        q = float(self.config["q"])
        w, a = self.sampled_weights()
        eps_grid = self.eps_grid(q)
        reports = [upper_embedding_check(self.f, q, w, a, eps_grid),
                   chain_check(self.f, q, w, a, eps_grid),
                   sobolev_embedding_check(self.f, q, w, a, eps_grid)]
        box = self.config.get("subbox")
        if box is not None:
            w_spec, a_spec = self.weights()
            delta = _default(self.config, "delta", 0.5)
            for check in (local_integrability_check, local_sobolev_check):
                reports.append(build("subbox", check, self.f, box["lower"],
                                     box["upper"], q, w_spec, a_spec, delta,
                                     eps_grid))
        checks = tuple(_check_row(r.name, r) for r in reports)
        return ScenarioOutcome(
            passed=all(c[1] for c in checks),
            report={**self.header(), "q": q, "checks": reports}, checks=checks)


class ProbeScenario(GridScenario):
    """Empirical bound of the maximal operator on a grand Lebesgue space."""

    name = "probe"
    required_fields = (
        Q, WEIGHT, GRANDIZER, EPS_POINTS, TRUNCATION, RADII, COUNT, SEED,
        SectionRequirement("omega", _BOX_FIELDS, "Sub-box Ω of the norms",
                           hard=False),
    )

    def run(self) -> ScenarioOutcome:
        q = float(self.config["q"])
        w, a = self.sampled_weights()
        family = stress_family(self.domain, q, _default(self.config, "count", 20),
                               _default(self.config, "seed", 0))
        section = self.config.get("omega")
        omega = None if section is None else (section["lower"], section["upper"])
        report = build("omega", maximal_boundedness_probe, family, q, w, a,
                       self.maximal_config(), self.eps_grid(q), omega)
        return ScenarioOutcome(
            passed=report.passed, report={"scenario": self.name, "probe": report},
            checks=(_check_row(report.name, report),))


class BenchScenario(ScenarioBase):
    """Timing of the ball and cube maximal paths across resolutions."""

    name = "bench"
    required_fields = (
        FieldRequirement("dims", list, "Dimensions", hard=False, check=_int_list),
        FieldRequirement("resolutions", list, "Cells per axis", hard=False,
                         check=_int_list),
        TRUNCATION, RADII, SEED,
        FieldRequirement("repeats", int, "Timed repetitions", hard=False,
                         check=_count),
    )

    def _time(self, func: object, *args: object) -> tuple[float, np.ndarray]:
        best, result = math.inf, None
        for _ in range(_default(self.config, "repeats", 1)):
            start = time.perf_counter()
            result = func(*args)
            best = min(best, time.perf_counter() - start)
        return best, result

    def run(self) -> ScenarioOutcome:
        rng = np.random.default_rng(_default(self.config, "seed", 0))
        radii = self.config.get("radii")
        cfg = build("radii", MaximalConfig,
                    truncation=_default(self.config, "t", math.inf),
                    radii=None if radii is None else tuple(radii))
        rows, checks = [], []
        for dim in _default(self.config, "dims", [1, 2]):
            for resolution in _default(self.config, "resolutions", [256, 512, 1024]):
                domain = BoxDomain.cube(0.0, 1.0, resolution, dim)
                g = GridFunction(domain, rng.random(domain.shape))
                grid = cfg.radii_for(domain)
                brute_time, brute = self._time(ball_maximal, g, grid)
                fast_time, fast = self._time(cube_maximal, g, grid)
                speedup = brute_time / fast_time if fast_time > 0 else math.inf
                rows.append(("ball", dim, resolution, brute_time, 1.0))
                rows.append(("cube", dim, resolution, fast_time, speedup))
                report = comparability_check(g, cfg)
                checks.append((f"comparability {dim}D {resolution}", report.passed,
                               report.ratio))
                if dim == 1:
                    exact = bool(np.max(np.abs(brute - fast)) <= 1e-12)
                    checks.append((f"1D paths agree {resolution}", exact,
                                   float(np.max(np.abs(brute - fast)))))
                _logger.info("Bench %dD res %d: speedup %.2f.", dim, resolution,
                             speedup)
        return ScenarioOutcome(
            passed=all(c[1] for c in checks),
            report={"scenario": self.name,
                    "checks": [{"name": name, "passed": passed}
                               for name, passed, _ in checks]},
            checks=tuple(checks),
            tables={"bench.csv": (("path", "dim", "resolution", "wall_time",
                                   "speedup"), rows)})
