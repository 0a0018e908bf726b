"""Test that all public imports work and __all__ is correct."""

from __future__ import annotations

import importlib

import pytest

SUBMODULES = [
    "cli",
    "config",
    "constants",
    "design_factory",
    "design_source",
    "designs",
    "entangle",
    "errors",
    "fields",
    "geometry",
    "harmonics",
    "optimize",
    "phases",
    "pointfile",
    "reports",
    "solver",
    "spindfs",
    "svgplot",
]


def test_top_level_imports():
    """Headline names importable from tdesign_rotors."""
    from tdesign_rotors import (  # noqa: F401
        TDesign,
        catalog_design,
        electrostatic_study,
        get_design_source,
        gravitational_scenario,
        load_design_safe,
        phase_rate,
        scaling_study,
        solve_design,
        verify_design,
    )


def test_all_exports_resolve():
    """Every name in __all__ exists and nothing is listed twice."""
    import tdesign_rotors

    assert len(tdesign_rotors.__all__) == len(set(tdesign_rotors.__all__))
    for name in tdesign_rotors.__all__:
        assert hasattr(tdesign_rotors, name), name


def test_design_sources_registered():
    import tdesign_rotors

    assert set(tdesign_rotors.available_design_sources()) == {"catalog", "solver", "file"}


@pytest.mark.parametrize("name", SUBMODULES)
def test_submodule_imports(name):
    """Individual submodules importable."""
    importlib.import_module(f"tdesign_rotors.{name}")
