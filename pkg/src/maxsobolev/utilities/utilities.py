"""Utilities for maxsobolev."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, TypeVar

from scipy.special import gamma

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

__all__ = ["cell_budget", "num_threads", "parallel_map", "unit_ball_volume"]

_logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_CELL_BUDGET = 2 ** 24


def unit_ball_volume(dim: int) -> float:
    """Return the volume ω_n of the Euclidean unit ball in ``dim`` dimensions.

    Examples
    --------
    >>> unit_ball_volume(1)
    2.0
    >>> round(unit_ball_volume(2), 12) == round(math.pi, 12)
    True
    """
    if dim < 1:
        raise ValueError(f"Dimension must be positive, got {dim}.")
    return float(math.pi ** (dim / 2) / gamma(dim / 2 + 1))


def _positive_int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, "
                         f"got {raw!r}.") from None
    if value < 1:
        raise ValueError(f"Environment variable {name} must be positive, got {value}.")
    return value


def cell_budget() -> int:
    """Return the default maximum number of grid cells.

    The budget is ``2**24`` unless overridden by ``MAXSOBOLEV_CELL_BUDGET``.
    """
    return _positive_int_env("MAXSOBOLEV_CELL_BUDGET", DEFAULT_CELL_BUDGET)


def num_threads() -> int:
    """Return the number of worker threads set by ``MAXSOBOLEV_NUM_THREADS``."""
    return _positive_int_env("MAXSOBOLEV_NUM_THREADS", 1)


def parallel_map(func: Callable[[T], R], items: Iterable[T],
                 threads: int | None = None) -> list[R]:
    """Apply ``func`` to every item, possibly in a thread pool.

    The results are returned in the order of ``items`` irrespective of the number of
    threads, so reductions over them are deterministic.

    Parameters
    ----------
    func : Callable
        Function applied to each item.
    items : Iterable
        Items to map over.
    threads : int, optional
        Number of worker threads, by default :func:`num_threads`.

    Returns
    -------
    list
        Results in input order.
    """
    items = list(items)
    threads = num_threads() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    _logger.debug("Mapping %d items over %d threads.", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
