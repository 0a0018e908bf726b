"""Design source factory.

Usage:
    from tdesign_rotors.design_factory import get_design_source, load_design_safe

    # Closed-form tetrahedron
    design = get_design_source("catalog").load(2)

    # Numerical 7-design, sweeping three seeds
    design = get_design_source("solver", seed=4, sweep=3).load(7)

    # Catalog when possible, solver otherwise (never raises for t <= 9)
    design = load_design_safe(4)
"""

from __future__ import annotations

import logging
from typing import Any

from tdesign_rotors.design_source import CatalogSource, DesignSource, FileSource, SolverSource
from tdesign_rotors.designs import TDesign
from tdesign_rotors.errors import UnknownDesignError

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Source registry
# ---------------------------------------------------------------------------

_SOURCE_REGISTRY: dict[str, type[DesignSource]] = {
    "catalog": CatalogSource,
    "solver": SolverSource,
    "file": FileSource,
}

# Sources built without arguments are shared for the session
_source_cache: dict[str, DesignSource] = {}


def available_design_sources() -> list[str]:
    return list(_SOURCE_REGISTRY)


def get_design_source(name: str = "catalog", **kwargs: Any) -> DesignSource:
    """Instantiate a design source by registry name.

    Raises:
        ValueError: if the name is not registered.
        TypeError: if a required constructor argument is missing
            (``file`` needs ``path``).
    """
    if name in _source_cache and not kwargs:
        return _source_cache[name]

    cls = _SOURCE_REGISTRY.get(name)
    if cls is None:
        msg = f"Unknown design source '{name}'. Available: {available_design_sources()}"
        raise ValueError(msg)
    instance = cls(**kwargs)
    if not kwargs:
        _source_cache[name] = instance
    logger.info("Design source initialized: %s", name)
    return instance


def load_design_safe(t: int, seed: int = 0, sweep: int = 3) -> TDesign:
    """Catalog design for t, falling back to the solver with a warning."""
    try:
        return get_design_source("catalog").load(t)
    except UnknownDesignError as exc:
        logger.warning("%s; falling back to the numerical solver", exc)
        return get_design_source("solver", seed=seed, sweep=sweep).load(t)


def clear_cache() -> None:
    _source_cache.clear()
