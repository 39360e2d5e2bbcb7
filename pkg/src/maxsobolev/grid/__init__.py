"""Uniform-grid discretization of box domains, fields and the analytic catalog."""

__all__ = [
    "Ball", "BoxDomain",
    "GridFunction", "gradient", "gradient_magnitude", "integral_average", "integrate",
    "window_sums",
    "TestFunctionSpec", "coordinate_symbols", "exact_gradient", "list_entries",
    "sample",
    "export_csv", "read_grid_function", "write_grid_function",
]

from maxsobolev.grid.catalog import (
    TestFunctionSpec,
    coordinate_symbols,
    exact_gradient,
    list_entries,
    sample,
)
from maxsobolev.grid.domains import Ball, BoxDomain
from maxsobolev.grid.functions import (
    GridFunction,
    gradient,
    gradient_magnitude,
    integral_average,
    integrate,
    window_sums,
)
from maxsobolev.grid.io import export_csv, read_grid_function, write_grid_function
