"""Spherical t-designs on S^2: catalog, verification, frame potential.

A point set {P_i} is a t-design when its average of every polynomial of
degree <= t equals the uniform average over the sphere. Equivalently, the
normalized harmonic sums (1/N) sum_i Y_lm(P_i) vanish for 1 <= l <= t,
which is what ``verify_design`` measures.

Closed-form catalog entries:
    t = 1   antipodal pair        N = 2
    t = 2   regular tetrahedron   N = 4
    t = 3   regular octahedron    N = 6
    t = 5   regular icosahedron   N = 12

Other orders come from the numerical solver (``solver.solve_design``) or a
point file (``pointfile.read_points``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from tdesign_rotors.constants import MAX_DEGREE
from tdesign_rotors.errors import UnknownDesignError
from tdesign_rotors.harmonics import degree_slices, real_sph_harm

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
SPHERE_TOL = 1e-9


class Provenance(str, Enum):
    CATALOG = "catalog"
    SOLVED = "solved"
    FILE = "file"


def check_on_sphere(points: npt.ArrayLike, tol: float = SPHERE_TOL) -> npt.NDArray[np.float64]:
    """Return points as an (N, 3) array, raising if any |P_i| differs from 1 by more than tol."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] == 0:
        msg = f"Expected a non-empty (N, 3) point array, got shape {pts.shape}"
        raise ValueError(msg)
    dev = np.abs(np.linalg.norm(pts, axis=1) - 1.0)
    bad = np.flatnonzero(~(dev <= tol))
    if bad.size:
        msg = f"Point {int(bad[0])} is off the unit sphere by {dev[bad[0]]:.3g}"
        raise ValueError(msg)
    return pts


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """Per-degree residuals r_l = max_m |sum_i Y_lm(P_i)| / N, l = 1..l_max."""

    residuals: npt.NDArray[np.float64]
    tol: float

    @property
    def l_max(self) -> int:
        return int(self.residuals.shape[0])

    @property
    def certified_t(self) -> int:
        """Largest t with r_l <= tol for every l <= t."""
        t = 0
        for r in self.residuals:
            if r > self.tol:
                break
            t += 1
        return t

    def residual(self, l: int) -> float:
        return float(self.residuals[l - 1])

    def rows(self) -> list[tuple[int, float]]:
        return [(l, float(r)) for l, r in enumerate(self.residuals, start=1)]


def harmonic_sums(points: npt.ArrayLike, l_max: int) -> npt.NDArray[np.float64]:
    """Normalized sums (1/N) sum_i Y_lm(P_i) for every (l, m) up to l_max."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    return real_sph_harm(pts, l_max).sum(axis=0) / pts.shape[0]


def verify_design(
    points: npt.ArrayLike, t_max: int, tol: float = DEFAULT_TOL
) -> VerificationReport:
    """Harmonic-sum residuals of ``points`` for degrees 1..t_max."""
    if t_max < 1 or t_max > MAX_DEGREE:
        msg = f"t_max must be in [1, {MAX_DEGREE}], got {t_max}"
        raise ValueError(msg)
    pts = check_on_sphere(points)
    sums = harmonic_sums(pts, t_max)
    slices = degree_slices(t_max)
    residuals = np.array([np.max(np.abs(sums[slices[l]])) for l in range(1, t_max + 1)])
    return VerificationReport(residuals, tol)


def frame_potential(points: npt.ArrayLike, t: int) -> float:
    """Phi_t = sum_{l=1..t} sum_m (sum_i Y_lm(P_i) / N)^2; zero exactly on t-designs."""
    if t < 1:
        return 0.0
    sums = harmonic_sums(points, t)
    return float(np.sum(sums[1:] ** 2))


@dataclass(frozen=True, eq=False)
class TDesign:
    """N unit vectors certified to integrate polynomials of degree <= t exactly."""

    points: npt.NDArray[np.float64]
    t: int
    provenance: Provenance
    residual: float

    def __post_init__(self) -> None:
        pts = np.array(check_on_sphere(self.points))
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "provenance", Provenance(self.provenance))
        if self.t < 1:
            msg = f"Design order must be >= 1, got {self.t}"
            raise ValueError(msg)

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])

    @classmethod
    def certify(
        cls,
        points: npt.ArrayLike,
        t: int,
        provenance: Provenance,
        tol: float = DEFAULT_TOL,
    ) -> TDesign:
        """Verify ``points`` at order t and wrap them, raising if they fall short."""
        report = verify_design(points, t, tol)
        if report.certified_t < t:
            msg = (
                f"Points certify only to t={report.certified_t} < {t} "
                f"(max residual {report.residuals.max():.3g}, tol {tol:g})"
            )
            raise ValueError(msg)
        residual = float(report.residuals.max())
        return cls(np.asarray(points, dtype=np.float64), t, provenance, residual)


# ---------------------------------------------------------------------------
# Closed-form catalog
# ---------------------------------------------------------------------------


def _antipodal() -> npt.NDArray[np.float64]:
    return np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])


def _tetrahedron() -> npt.NDArray[np.float64]:
    v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=np.float64)
    return v / math.sqrt(3.0)


def _octahedron() -> npt.NDArray[np.float64]:
    return np.vstack([np.eye(3), -np.eye(3)])


def _icosahedron() -> npt.NDArray[np.float64]:
    g = (1.0 + math.sqrt(5.0)) / 2.0
    rows = []
    for a in (1.0, -1.0):
        for b in (g, -g):
            rows += [(0.0, a, b), (a, b, 0.0), (b, 0.0, a)]
    v = np.array(rows)
    return v / np.linalg.norm(v, axis=1)[:, None]


_CATALOG = {
    1: _antipodal,
    2: _tetrahedron,
    3: _octahedron,
    5: _icosahedron,
}


def catalog_orders() -> list[int]:
    return sorted(_CATALOG)


def catalog_design(t: int) -> TDesign:
    """Exact symmetric t-design for t in {1, 2, 3, 5}, verified on construction."""
    if t not in _CATALOG:
        msg = (
            f"No closed-form {t}-design in the catalog (have {catalog_orders()}); "
            "use solve_design or load a point file"
        )
        raise UnknownDesignError(msg)
    return TDesign.certify(_CATALOG[t](), t, Provenance.CATALOG)


def default_design_size(t: int) -> int:
    """Solver point count: ceil((t + 1)^2 / 2), rounded up to even, plus 2.

    Matches the ~t^2/2 growth of the smallest known designs while staying at
    or above the counts for which designs are known to exist.
    """
    if t < 1:
        msg = f"t must be >= 1, got {t}"
        raise ValueError(msg)
    n = math.ceil((t + 1) ** 2 / 2)
    n += n % 2
    return n + 2


# ---------------------------------------------------------------------------
# Quadrature oracle
# ---------------------------------------------------------------------------


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def monomial_sphere_average(a: int, b: int, c: int) -> float:
    """Uniform average of x^a y^b z^c over the unit sphere (closed form)."""
    if a % 2 or b % 2 or c % 2:
        return 0.0
    num = _double_factorial(a - 1) * _double_factorial(b - 1) * _double_factorial(c - 1)
    return num / _double_factorial(a + b + c + 1)


def monomial_exponents(degree: int) -> list[tuple[int, int, int]]:
    """All (a, b, c) with a + b + c <= degree, in graded order."""
    return [
        (a, b, d - a - b)
        for d in range(degree + 1)
        for a in range(d, -1, -1)
        for b in range(d - a, -1, -1)
    ]


def quadrature_error(points: npt.ArrayLike, degree: int) -> float:
    """Max over monomials of degree <= ``degree`` of |point average - sphere average|."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    worst = 0.0
    for a, b, c in monomial_exponents(degree):
        avg = float(np.mean(pts[:, 0] ** a * pts[:, 1] ** b * pts[:, 2] ** c))
        worst = max(worst, abs(avg - monomial_sphere_average(a, b, c)))
    return worst
