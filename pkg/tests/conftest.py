"""Shared fixtures."""

from __future__ import annotations

from pathlib import Path

import pytest

from tdesign_rotors import ELEMENTARY_CHARGE, build_body, catalog_design
from tdesign_rotors.design_factory import clear_cache

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


@pytest.fixture(autouse=True)
def _fresh_source_cache():
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def antipodal():
    return catalog_design(1)


@pytest.fixture
def tetrahedron():
    return catalog_design(2)


@pytest.fixture
def octahedron():
    return catalog_design(3)


@pytest.fixture
def icosahedron():
    return catalog_design(5)


@pytest.fixture
def charged_tetra(tetrahedron):
    """Tetrahedron of elementary charges at 2 um."""
    return build_body(tetrahedron, 2e-6, ELEMENTARY_CHARGE, "charge")


@pytest.fixture
def scenarios_dir():
    return SCENARIOS
