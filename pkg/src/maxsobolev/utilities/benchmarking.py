"""Module containing utilities to easily benchmark the maximal operator."""
from __future__ import annotations

import time
from typing import TYPE_CHECKING

import pytest

from maxsobolev.maximal.config import MaximalConfig
from maxsobolev.maximal.kernels import ball_maximal, cube_maximal

if TYPE_CHECKING:
    from collections.abc import Callable

    from pytest_benchmark.fixture import BenchmarkFixture

    from maxsobolev.grid.functions import GridFunction

__all__ = ["benchmark"]


def benchmark(
    rounds: int = 3, group: str | None = None, window_shape: str = "cube",
) -> Callable[[Callable[[], tuple[GridFunction, MaximalConfig | None]]], Callable]:
    """Create decorator to benchmark a maximal operator path.

    Parameters
    ----------
    rounds : int, optional
        Number of rounds to run the benchmark for, by default 3.
    group : Optional[str], optional
        Group to put the benchmark in, by default None.
    window_shape : str, optional
        Path to benchmark, ``"cube"`` for the prefix-sum path or ``"ball"`` for the
        convolution path, by default ``"cube"``.

    Returns
    -------
    function
        Decorated function, which should return the field and optionally the
        :class:`maxsobolev.maximal.MaximalConfig` to evaluate the maximal function
        with. The speedup of the cube path over one evaluation of the ball path is
        stored in the extra info of the benchmark.

    """
    kernels = {"ball": ball_maximal, "cube": cube_maximal}

    def decorator(func: Callable[[], tuple[GridFunction, MaximalConfig | None]]
                  ) -> Callable:
        @pytest.mark.benchmark(group=group)
        def wrapper(benchmark: BenchmarkFixture) -> None:
            g, cfg = func()
            radii = (MaximalConfig() if cfg is None else cfg).radii_for(g.domain)
            kernel = kernels[window_shape]
            benchmark.pedantic(kernel, args=(g, radii), rounds=rounds)
            timings = {}
            for name, other in kernels.items():
                start = time.perf_counter()
                other(g, radii)
                timings[name] = time.perf_counter() - start
            benchmark.extra_info["cells"] = g.domain.n_cells
            benchmark.extra_info["radii"] = int(radii.size)
            benchmark.extra_info["speedup"] = timings["ball"] / max(
                timings["cube"], 1e-12)

        return wrapper

    return decorator
