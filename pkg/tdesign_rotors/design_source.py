"""Abstract design source and its concrete implementations.

A design source turns a requested order t into a certified ``TDesign``:

    CatalogSource   closed-form designs (t in 1, 2, 3, 5)
    SolverSource    numerical search, optionally sweeping seeds
    FileSource      a point file, certified at load time

Sources are looked up by name through ``design_factory``.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from pathlib import Path

from tenacity import (
    Retrying,
    before_sleep_log,
    retry_if_exception_type,
    stop_after_attempt,
)

from tdesign_rotors.designs import Provenance, TDesign, catalog_design, verify_design
from tdesign_rotors.errors import PointFileError, SolverError
from tdesign_rotors.pointfile import read_points
from tdesign_rotors.solver import SolverOptions, solve_design

logger = logging.getLogger(__name__)


class DesignSource(ABC):
    """Something that can hand out a t-design for a requested order."""

    @property
    def name(self) -> str:
        return type(self).__name__

    @abstractmethod
    def load(self, t: int) -> TDesign:
        """Return a design certified at order >= t."""
        ...


class CatalogSource(DesignSource):
    @property
    def name(self) -> str:
        return "catalog"

    def load(self, t: int) -> TDesign:
        return catalog_design(t)


class SolverSource(DesignSource):
    """Numerical designs; ``sweep`` > 1 retries with seeds seed+1, seed+2, ..."""

    def __init__(
        self,
        n: int | None = None,
        seed: int = 0,
        restarts: int = 32,
        sweep: int = 1,
    ):
        if sweep < 1:
            msg = f"sweep must be >= 1, got {sweep}"
            raise ValueError(msg)
        self.n = n
        self.seed = seed
        self.opts = SolverOptions(restarts=restarts)
        self.sweep = sweep

    @property
    def name(self) -> str:
        return "solver"

    def load(self, t: int) -> TDesign:
        retrying = Retrying(
            stop=stop_after_attempt(self.sweep),
            retry=retry_if_exception_type(SolverError),
            before_sleep=before_sleep_log(logger, logging.WARNING),
            reraise=True,
        )
        for attempt in retrying:
            with attempt:
                seed = self.seed + attempt.retry_state.attempt_number - 1
                return solve_design(t, self.n, seed, self.opts)
        msg = "unreachable: tenacity exhausted without raising"
        raise AssertionError(msg)


class FileSource(DesignSource):
    """Designs read from a point file and certified at the requested order."""

    def __init__(self, path: str | Path, tol: float = 1e-9):
        self.path = Path(path)
        self.tol = tol

    @property
    def name(self) -> str:
        return "file"

    def load(self, t: int) -> TDesign:
        points = read_points(self.path)
        report = verify_design(points, t, self.tol)
        if report.certified_t < t:
            msg = (
                f"{self.path} certifies only to t={report.certified_t}, "
                f"{t} requested (max residual {report.residuals.max():.3g})"
            )
            raise PointFileError(msg)
        return TDesign(points, t, Provenance.FILE, float(report.residuals.max()))
