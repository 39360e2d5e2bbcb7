"""Report types returned by the estimators and verifiers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Mapping

__all__ = [
    "EmbeddingReport",
    "GrandNormResult",
    "HajlaszReport",
    "MuckenhouptEstimate",
    "ScenarioOutcome",
    "VerificationReport",
    "to_jsonable",
]


def to_jsonable(obj: object) -> object:
    """Convert an object to plain JSON types.

    NumPy scalars and arrays become Python numbers and lists, non-finite floats become
    the strings ``"inf"``, ``"-inf"`` and ``"nan"`` and tuples become lists. Objects
    with a ``to_dict`` method are converted through it.
    """
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """Outcome of the verification of an inequality.

    Attributes
    ----------
    name : str
        Name of the verified inequality.
    passed : bool
        Whether the inequality holds everywhere it was checked.
    ratio : float
        Worst-case ratio of left- over right-hand side; at most one when passed.
    constants : Mapping[str, float]
        Empirical constants and the individual values compared.
    violations : tuple
        Locations at which the inequality fails.
    exclusions : tuple
        Locations excluded from the check, e.g. cells adjacent to a kink.
    """

    name: str
    passed: bool
    ratio: float
    constants: Mapping[str, float] = field(default_factory=dict)
    violations: tuple = ()
    exclusions: tuple = ()

    def to_dict(self) -> dict[str, object]:
        """Return the report as JSON compatible dictionary."""
        return to_jsonable({
            "name": self.name,
            "passed": self.passed,
            "ratio": self.ratio,
            "constants": dict(self.constants),
            "violations": list(self.violations),
            "exclusions": list(self.exclusions),
        })


@dataclass(frozen=True)
class EmbeddingReport:
    """Comparison ``lhs <= rhs`` with a relative tolerance."""

    name: str
    lhs: float
    rhs: float
    tolerance: float

    @property
    def ratio(self) -> float:
        """Ratio ``lhs / rhs``, zero for ``0 <= 0``."""
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else math.inf
        return self.lhs / self.rhs

    @property
    def passed(self) -> bool:
        """Whether ``lhs <= rhs * (1 + tolerance)``."""
        return bool(self.lhs <= self.rhs * (1 + self.tolerance))

    def to_dict(self) -> dict[str, object]:
        """Return the report as JSON compatible dictionary."""
        return to_jsonable({
            "name": self.name, "lhs": self.lhs, "rhs": self.rhs,
            "ratio": self.ratio, "passed": self.passed, "tolerance": self.tolerance,
        })


@dataclass(frozen=True, eq=False)
class HajlaszReport:
    """Result of checking ``|f(x) - f(y)| <= c |x - y| (g(x) + g(y))`` on pairs.

    Attributes
    ----------
    minimal_constant : float
        Smallest ``c`` for which all admissible sampled pairs satisfy the inequality.
    n_pairs : int
        Number of sampled pairs.
    n_admissible : int
        Number of pairs that entered the maximum.
    worst_pair : tuple[tuple[float, ...], tuple[float, ...]] | None
        Pair attaining the minimal constant.
    violations : tuple
        Pairs ``(x, y, ratio)`` whose ratio exceeds the supplied constant.
    blow_up : bool
        Whether the minimal constant indicates the absence of a bounded gradient.
    sample : Mapping[str, object]
        Reproduction data of the pair sample: seed, count and strategy.
    """

    minimal_constant: float
    n_pairs: int
    n_admissible: int
    worst_pair: tuple | None
    violations: tuple = ()
    blow_up: bool = False
    sample: Mapping[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict[str, object]:
        """Return the report as JSON compatible dictionary."""
        return to_jsonable({
            "minimal_constant": self.minimal_constant,
            "n_pairs": self.n_pairs,
            "n_admissible": self.n_admissible,
            "worst_pair": self.worst_pair,
            "violations": list(self.violations),
            "blow_up": self.blow_up,
            "sample": dict(self.sample),
        })


@dataclass(frozen=True, eq=False)
class MuckenhouptEstimate:
    """Estimate of the Muckenhoupt constant of a weight over a family of cubes.

    Attributes
    ----------
    q : float
        Exponent of the class.
    value : float
        Largest A_q expression over the admissible cubes, ``inf`` if some average is
        infinite.
    divergent : bool
        Whether the estimate is flagged as divergent.
    argmax_center : tuple[float, ...]
        Center of the maximizing cube.
    argmax_half_width : float
        Half-width of the maximizing cube.
    centers : int
        Number of cube centers in the search family.
    half_widths : tuple[float, ...]
        Half-widths of the search family that had admissible cubes.
    level_maxima : tuple[float, ...]
        Maximum of the expression per half-width, in the order of ``half_widths``.
    """

    q: float
    value: float
    divergent: bool
    argmax_center: tuple[float, ...]
    argmax_half_width: float
    centers: int
    half_widths: tuple[float, ...]
    level_maxima: tuple[float, ...]

    @property
    def finite(self) -> bool:
        """Whether the estimate is a usable finite number."""
        return bool(math.isfinite(self.value) and not self.divergent)

    def to_dict(self) -> dict[str, object]:
        """Return the estimate as JSON compatible dictionary."""
        return to_jsonable({
            "q": self.q,
            "value": self.value,
            "divergent": self.divergent,
            "argmax": {"center": self.argmax_center,
                       "half_width": self.argmax_half_width},
            "family": {"centers": self.centers, "half_widths": self.half_widths,
                       "level_maxima": self.level_maxima},
        })


@dataclass(frozen=True, eq=False)
class GrandNormResult:
    """Value of a grand norm together with its ε-profile.

    Attributes
    ----------
    q : float
        Exponent of the grand space.
    value : float
        Maximum of the profile.
    argmax_eps : float
        ε at which the maximum is attained.
    eps : numpy.ndarray
        Increasing ε values of the profile.
    profile : numpy.ndarray
        Scaled norms ``ε^(1/(q-ε)) ||f||_{q-ε}`` at ``eps``.
    trend : str
        ``"interior"`` if the maximum lies strictly inside the grid, otherwise the
        endpoint (``"lower"`` or ``"upper"``) towards which the profile still
        increases.
    """

    q: float
    value: float
    argmax_eps: float
    eps: np.ndarray
    profile: np.ndarray
    trend: str = "interior"

    def to_dict(self, include_profile: bool = False) -> dict[str, object]:
        """Return the result as JSON compatible dictionary."""
        data = {"q": self.q, "value": self.value, "argmax_eps": self.argmax_eps,
                "trend": self.trend, "n_profile": len(self.eps)}
        if include_profile:
            data["profile"] = np.column_stack([self.eps, self.profile])
        return to_jsonable(data)

    def to_csv_rows(self) -> list[tuple[float, float]]:
        """Return the profile as ``(eps, value)`` rows."""
        return [(float(e), float(v)) for e, v in zip(self.eps, self.profile)]


@dataclass(frozen=True, eq=False)
class ScenarioOutcome:
    """Outcome of a scenario run.

    Attributes
    ----------
    passed : bool
        Whether every verification of the scenario passed.
    report : Mapping[str, object]
        Content of ``report.json``.
    checks : tuple[tuple[str, bool, float], ...]
        Summary rows ``(check, passed, ratio)``.
    tables : Mapping[str, tuple[tuple[str, ...], list[tuple]]]
        Additional CSV tables by file name, as header and rows.
    """

    passed: bool
    report: Mapping[str, object]
    checks: tuple[tuple[str, bool, float], ...] = ()
    tables: Mapping[str, tuple[tuple[str, ...], list[tuple]]] = field(
        default_factory=dict)
