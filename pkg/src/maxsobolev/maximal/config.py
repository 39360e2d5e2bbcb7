"""Configuration of the maximal operators and their radius grids."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Sequence

    from maxsobolev.grid.domains import BoxDomain

__all__ = ["DEFAULT_RATIO", "MaximalConfig", "radius_grid"]

_logger = logging.getLogger(__name__)

DEFAULT_RATIO = 2 ** 0.25
WINDOW_SHAPES = ("ball", "cube")


def radius_grid(domain: BoxDomain, t: float = math.inf,
                ratio: float = DEFAULT_RATIO) -> np.ndarray:
    """Geometric radius grid for the maximal operators on a domain.

    The radii start at ``1.5 h``, with ``h`` the smallest spacing, grow by ``ratio``
    and stop at ``t`` or at the diameter of the domain. Each radius is rounded down to
    a half-integer multiple ``(m + 1/2) h``, such that a one-dimensional ball around a
    cell center covers exactly ``2m + 1`` cells. Duplicates created by the rounding
    are removed.

    Parameters
    ----------
    domain : BoxDomain
        Domain whose spacing and diameter bound the grid.
    t : float, optional
        Truncation radius, by default infinity.
    ratio : float, optional
        Growth factor between consecutive radii, by default ``2**(1/4)``.

    Returns
    -------
    numpy.ndarray
        Strictly increasing radii in ``(0, min(t, diameter)]``.

    Examples
    --------
    >>> from maxsobolev.grid import BoxDomain
    >>> radius_grid(BoxDomain((0.0,), (1.0,), 8), t=0.5) * 8
    array([1.5, 2.5, 3.5])
    """
    if not ratio > 1:
        raise ValueError(f"Radius ratio must exceed 1, got {ratio}.")
    h = domain.min_spacing
    r_max = min(float(t), domain.diameter)
    if r_max < h / 2:
        return np.empty(0)
    start = min(1.5 * h, r_max)
    count = int(math.floor(math.log(r_max / start, ratio) + 1e-9)) + 1
    raw = start * ratio ** np.arange(count)
    snapped = (np.floor(raw / h - 0.5 + 1e-9) + 0.5) * h
    radii = np.unique(snapped[snapped > 0])
    _logger.debug("Radius grid of %d radii from %g to %g.", radii.size,
                  radii[0] if radii.size else 0.0, radii[-1] if radii.size else 0.0)
    return radii


@dataclass(frozen=True)
class MaximalConfig:
    """Configuration of the maximal operator ``M_t``.

    Parameters
    ----------
    truncation : float, optional
        Largest admissible radius ``t``, by default infinity, i.e. ``M = M_∞``.
    radii : Sequence[float], optional
        Explicit strictly increasing radii in ``(0, t]``. By default the grid of
        :func:`radius_grid` is used for the domain of the field.
    window_shape : str, optional
        ``"cube"`` for the fast prefix-sum path over axis cubes or ``"ball"`` for the
        brute-force path over Euclidean balls, by default ``"cube"``.
    ratio : float, optional
        Growth factor of the default radius grid, at most ``2**(1/4)`` so that every
        doubling holds at least four radii.
    """

    truncation: float = math.inf
    radii: tuple[float, ...] | None = None
    window_shape: str = "cube"
    ratio: float = DEFAULT_RATIO

    def __post_init__(self) -> None:
        object.__setattr__(self, "truncation", float(self.truncation))
        if not self.truncation > 0:
            raise ValueError(f"Truncation must be positive, got {self.truncation}.")
        if self.window_shape not in WINDOW_SHAPES:
            raise ValueError(f"Window shape must be one of {WINDOW_SHAPES}, got "
                             f"{self.window_shape!r}.")
        if not 1 < self.ratio <= DEFAULT_RATIO * (1 + 1e-12):
            raise ValueError(f"Radius ratio must lie in (1, 2**0.25], got "
                             f"{self.ratio}.")
        if self.radii is not None:
            radii = tuple(float(r) for r in self.radii)
            if not radii:
                raise ValueError("The radius grid is empty.")
            if any(r <= 0 or r > self.truncation for r in radii):
                raise ValueError(f"Radii must lie in (0, {self.truncation}], got "
                                 f"{radii}.")
            if any(b <= a for a, b in zip(radii, radii[1:])):
                raise ValueError(f"Radii must be strictly increasing, got {radii}.")
            object.__setattr__(self, "radii", radii)

    def radii_for(self, domain: BoxDomain) -> np.ndarray:
        """Radii used on ``domain``."""
        if self.radii is not None:
            return np.asarray(self.radii)
        return radius_grid(domain, self.truncation, self.ratio)

    def replace(self, **changes: object) -> MaximalConfig:
        """Return a copy with some fields replaced."""
        options = {"truncation": self.truncation, "radii": self.radii,
                   "window_shape": self.window_shape, "ratio": self.ratio}
        options.update(changes)
        return MaximalConfig(**options)

    @classmethod
    def from_radii(cls, radii: Sequence[float], **kwargs: object) -> MaximalConfig:
        """Configuration with an explicit radius grid."""
        return cls(radii=tuple(radii), **kwargs)
