"""Tests for the design source factory and concrete sources."""

from __future__ import annotations

import logging

import pytest

from tdesign_rotors import (
    CatalogSource,
    DesignSource,
    FileSource,
    PointFileError,
    Provenance,
    SolverError,
    SolverSource,
    UnknownDesignError,
    available_design_sources,
    get_design_source,
    load_design_safe,
)
from tdesign_rotors.design_factory import _SOURCE_REGISTRY
from tdesign_rotors.pointfile import write_design


class TestRegistry:
    def test_available(self):
        assert available_design_sources() == ["catalog", "solver", "file"]

    @pytest.mark.parametrize(
        ("name", "cls"), [("catalog", CatalogSource), ("solver", SolverSource)]
    )
    def test_get_by_name(self, name, cls):
        source = get_design_source(name)
        assert isinstance(source, cls)
        assert isinstance(source, DesignSource)
        assert source.name == name

    def test_registry_maps_names_to_classes(self):
        assert _SOURCE_REGISTRY == {
            "catalog": CatalogSource,
            "solver": SolverSource,
            "file": FileSource,
        }

    def test_registered_class_reports_its_name(self, tmp_path, octahedron):
        path = tmp_path / "t3.txt"
        write_design(path, octahedron)
        assert get_design_source("file", path=path).name == "file"

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="Unknown design source 'lebedev'"):
            get_design_source("lebedev")

    def test_file_needs_path(self):
        with pytest.raises(TypeError):
            get_design_source("file")

    def test_no_arg_sources_are_cached(self):
        assert get_design_source("catalog") is get_design_source("catalog")

    def test_configured_sources_are_fresh(self):
        a = get_design_source("solver", seed=1)
        b = get_design_source("solver", seed=1)
        assert a is not b
        assert get_design_source("solver") is not a


class TestCatalogSource:
    def test_load(self):
        assert get_design_source("catalog").load(3).n_points == 6

    def test_missing_order(self):
        with pytest.raises(UnknownDesignError):
            get_design_source("catalog").load(4)


class TestSolverSource:
    def test_sweep_advances_seed(self, monkeypatch, caplog):
        seeds: list[int] = []

        def fake_solve(t, n, seed, opts):
            seeds.append(seed)
            if len(seeds) < 3:
                msg = "no luck"
                raise SolverError(msg, 1.0)
            return get_design_source("catalog").load(t)

        monkeypatch.setattr("tdesign_rotors.design_source.solve_design", fake_solve)
        with caplog.at_level(logging.WARNING, logger="tdesign_rotors.design_source"):
            design = SolverSource(seed=10, sweep=4).load(2)
        assert design.n_points == 4
        assert seeds == [10, 11, 12]
        assert len([r for r in caplog.records if r.levelno == logging.WARNING]) == 2

    def test_sweep_exhausted_reraises(self, monkeypatch):
        def always_fail(t, n, seed, opts):
            msg = f"seed {seed} failed"
            raise SolverError(msg, 0.5)

        monkeypatch.setattr("tdesign_rotors.design_source.solve_design", always_fail)
        with pytest.raises(SolverError, match="seed 2 failed"):
            SolverSource(seed=0, sweep=3).load(5)

    def test_sweep_must_be_positive(self):
        with pytest.raises(ValueError, match="sweep"):
            SolverSource(sweep=0)

    def test_real_solve(self):
        design = get_design_source("solver", n=8, seed=0, restarts=8).load(2)
        assert design.provenance is Provenance.SOLVED


class TestFileSource:
    def test_certifies_at_requested_order(self, tmp_path, octahedron):
        path = write_design(tmp_path / "octa.txt", octahedron)
        design = get_design_source("file", path=path).load(2)
        assert design.t == 2
        assert design.provenance is Provenance.FILE

    def test_overclaim_rejected(self, tmp_path, octahedron):
        path = write_design(tmp_path / "octa.txt", octahedron)
        with pytest.raises(PointFileError, match="certifies only to t=3"):
            FileSource(path).load(4)


class TestLoadDesignSafe:
    def test_prefers_catalog(self):
        assert load_design_safe(5).provenance is Provenance.CATALOG

    def test_falls_back_to_solver(self, caplog):
        with caplog.at_level(logging.WARNING, logger="tdesign_rotors.design_factory"):
            design = load_design_safe(4)
        assert design.provenance is Provenance.SOLVED
        assert design.t == 4
        assert "falling back" in caplog.text
