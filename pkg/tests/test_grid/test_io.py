from __future__ import annotations

import json
import math

import numpy as np
import pytest

from maxsobolev.core import DomainError
from maxsobolev.grid import (
    BoxDomain,
    GridFunction,
    export_csv,
    read_grid_function,
    write_grid_function,
)


class TestBinaryFormat:
    def test_write_and_read(self, tmp_path) -> None:
        domain = BoxDomain((0.0, -1.0), (2.0, 1.0), (3, 2))
        values = np.arange(6, dtype=float)
        values[0] = math.inf
        f = GridFunction(domain, values, extended=True)
        path = write_grid_function(f, tmp_path / "w.bin")
        g = read_grid_function(path)
        assert g.domain == domain
        assert g.extended
        np.testing.assert_array_equal(g.values, f.values)

    def test_layout(self, tmp_path) -> None:
        f = GridFunction(BoxDomain((0.0,), (1.0,), 2), [3.0, 4.0])
        raw = write_grid_function(f, tmp_path / "f.bin").read_bytes()
        assert len(raw) == 2 * 8 + 2 * 8 + 2 * 8
        np.testing.assert_array_equal(np.frombuffer(raw[:16], dtype="<i8"), [1, 2])
        np.testing.assert_array_equal(np.frombuffer(raw[16:], dtype="<f8"),
                                      [0.0, 1.0, 3.0, 4.0])
        meta = json.loads((tmp_path / "f.bin.json").read_text())
        assert meta == {"dim": 1, "resolution": [2], "lower": [0.0], "upper": [1.0],
                        "kind": "scalar", "extended": False}

    def test_sidecar_mismatch(self, tmp_path) -> None:
        f = GridFunction(BoxDomain((0.0,), (1.0,), 2), [3.0, 4.0])
        path = write_grid_function(f, tmp_path / "f.bin")
        sidecar = tmp_path / "f.bin.json"
        meta = json.loads(sidecar.read_text())
        meta["upper"] = [2.0]
        sidecar.write_text(json.dumps(meta))
        with pytest.raises(DomainError, match="upper"):
            read_grid_function(path)

    def test_truncated(self, tmp_path) -> None:
        f = GridFunction(BoxDomain((0.0,), (1.0,), 2), [3.0, 4.0])
        path = write_grid_function(f, tmp_path / "f.bin")
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(DomainError, match="announces 2"):
            read_grid_function(path)


class TestExportCsv:
    def test_one_dimensional(self, tmp_path) -> None:
        f = GridFunction(BoxDomain((0.0,), (1.0,), 2), [3.0, 4.0])
        lines = export_csv(f, tmp_path / "f.csv").read_text().splitlines()
        assert lines == ["x0,value", "0.25,3", "0.75,4"]

    def test_three_dimensional_slice(self, tmp_path) -> None:
        domain = BoxDomain.cube(0.0, 1.0, 2, dim=3)
        f = GridFunction(domain, np.arange(8, dtype=float))
        lines = export_csv(f, tmp_path / "f.csv", fixed=(2, 1)).read_text().splitlines()
        assert lines[0] == "x0,x1,value"
        assert [line.rsplit(",", 1)[1] for line in lines[1:]] == ["1", "3", "5", "7"]

    def test_three_dimensional_needs_slice(self, tmp_path) -> None:
        f = GridFunction.constant(BoxDomain.cube(0.0, 1.0, 2, dim=3), 1.0)
        with pytest.raises(ValueError, match="requires a fixed"):
            export_csv(f, tmp_path / "f.csv")

    def test_slice_of_2d_rejected(self, tmp_path, unit_square) -> None:
        with pytest.raises(ValueError, match="only supported for 3D"):
            export_csv(GridFunction.constant(unit_square, 1.0), tmp_path / "f.csv",
                       fixed=(0, 1))
