"""Serialization of grid functions."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from maxsobolev.core.exceptions import DomainError
from maxsobolev.grid.domains import BoxDomain
from maxsobolev.grid.functions import GridFunction

if TYPE_CHECKING:
    from os import PathLike

__all__ = ["export_csv", "read_grid_function", "write_grid_function"]

_logger = logging.getLogger(__name__)

_INT = np.dtype("<i8")
_FLOAT = np.dtype("<f8")


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def _metadata(f: GridFunction) -> dict[str, object]:
    return {
        "dim": f.domain.dim,
        "resolution": list(f.domain.resolution),
        "lower": list(f.domain.lower),
        "upper": list(f.domain.upper),
        "kind": f.kind,
        "extended": f.extended,
    }


def write_grid_function(f: GridFunction, path: str | PathLike) -> Path:
    """Write a grid function to a binary file with a JSON sidecar.

    The binary file holds, little-endian, the dimension and resolutions as 64-bit
    integers, the lower and upper corners as 64-bit floats and then the values in
    row-major order. The sidecar ``<path>.json`` repeats the metadata together with the
    kind and the extended flag.

    Parameters
    ----------
    f : GridFunction
        Field to write.
    path : str | PathLike
        Destination of the binary file.

    Returns
    -------
    Path
        Path of the binary file.
    """
    path = Path(path)
    header = np.array([f.domain.dim, *f.domain.resolution], dtype=_INT)
    bounds = np.array([*f.domain.lower, *f.domain.upper], dtype=_FLOAT)
    with path.open("wb") as file:
        file.write(header.tobytes())
        file.write(bounds.tobytes())
        file.write(np.ascontiguousarray(f.values, dtype=_FLOAT).tobytes())
    _sidecar(path).write_text(json.dumps(_metadata(f), indent=2, sort_keys=True))
    _logger.debug("Wrote grid function to %s.", path)
    return path


def read_grid_function(path: str | PathLike) -> GridFunction:
    """Read a grid function written by :func:`write_grid_function`.

    Raises
    ------
    DomainError
        If the binary header and the sidecar disagree or the file is truncated.
    """
    path = Path(path)
    raw = path.read_bytes()
    dim = int(np.frombuffer(raw, dtype=_INT, count=1)[0])
    if dim not in (1, 2, 3):
        raise DomainError(f"{path} has invalid dimension {dim} in its header.")
    resolution = np.frombuffer(raw, dtype=_INT, count=dim, offset=_INT.itemsize)
    offset = _INT.itemsize * (1 + dim)
    bounds = np.frombuffer(raw, dtype=_FLOAT, count=2 * dim, offset=offset)
    offset += _FLOAT.itemsize * 2 * dim
    n_cells = int(np.prod(resolution))
    if len(raw) - offset != n_cells * _FLOAT.itemsize:
        raise DomainError(f"{path} holds {(len(raw) - offset) // _FLOAT.itemsize} "
                          f"values, but its header announces {n_cells}.")
    values = np.frombuffer(raw, dtype=_FLOAT, offset=offset)
    meta = json.loads(_sidecar(path).read_text())
    header = {"dim": dim, "resolution": resolution.tolist(),
              "lower": bounds[:dim].tolist(), "upper": bounds[dim:].tolist()}
    for key, value in header.items():
        if meta.get(key) != value:
            raise DomainError(f"Sidecar of {path} has {key}={meta.get(key)!r}, but the "
                              f"binary header has {value!r}.")
    domain = BoxDomain(header["lower"], header["upper"], header["resolution"])
    return GridFunction(domain, values, kind=meta.get("kind", "scalar"),
                        extended=bool(meta.get("extended", False)))


def export_csv(f: GridFunction, path: str | PathLike,
               fixed: tuple[int, int] | None = None) -> Path:
    """Export a 1D or 2D field, or a slice of a 3D field, as CSV.

    The columns are the center coordinates ``x0[,x1]`` followed by ``value``.

    Parameters
    ----------
    f : GridFunction
        Field to export.
    path : str | PathLike
        Destination file.
    fixed : tuple[int, int], optional
        ``(axis, index)`` of the slice to export from a 3D field.

    Returns
    -------
    Path
        Path of the CSV file.
    """
    path = Path(path)
    domain, values = f.domain, f.values
    axes = list(range(domain.dim))
    if domain.dim == 3:
        if fixed is None:
            raise ValueError("Exporting a 3D field requires a fixed (axis, index) "
                             "slice.")
        axis, index = fixed
        values = np.take(values, index, axis=axis)
        axes.remove(axis)
    elif fixed is not None:
        raise ValueError(f"Slices are only supported for 3D fields, got {domain.dim}D.")
    grids = np.meshgrid(*(domain.centers(k) for k in axes), indexing="ij")
    table = np.column_stack([*(g.ravel() for g in grids), values.ravel()])
    header = ",".join([*(f"x{k}" for k in axes), "value"])
    np.savetxt(path, table, delimiter=",", header=header, comments="", fmt="%.17g")
    return path
