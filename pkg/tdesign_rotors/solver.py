"""Numerical t-design solver.

Finds N points whose normalized harmonic sums vanish for degrees 1..t by
minimizing the frame potential. Points are parametrized by spherical
angles (theta_i, phi_i) and the residual vector

    F_lm = (1/N) sum_i Y_lm(theta_i, phi_i),   1 <= l <= t

is driven to zero with ``scipy.optimize.least_squares``; |F|^2 is exactly
``frame_potential``. Restarts begin from Haar-random point clouds seeded
deterministically from ``(seed, restart)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import least_squares

from tdesign_rotors.constants import MAX_DEGREE
from tdesign_rotors.designs import (
    Provenance,
    TDesign,
    default_design_size,
    harmonic_sums,
    verify_design,
)
from tdesign_rotors.errors import SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for ``solve_design``.

    ``tol`` is the certification tolerance on the per-degree residual.
    With ``stop_on_success`` the first restart that certifies is kept;
    otherwise every restart runs and the lowest residual wins (ties go to
    the lowest restart index).
    """

    restarts: int = 32
    tol: float = 1e-9
    max_nfev: int = 4000
    stop_on_success: bool = True

    def __post_init__(self) -> None:
        if self.restarts < 1:
            msg = f"restarts must be >= 1, got {self.restarts}"
            raise ValueError(msg)


def _to_points(angles: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    theta, phi = angles[0::2], angles[1::2]
    sin_t = np.sin(theta)
    return np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), np.cos(theta)])


def _to_angles(points: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    theta = np.arccos(np.clip(points[:, 2], -1.0, 1.0))
    phi = np.arctan2(points[:, 1], points[:, 0])
    out = np.empty(2 * points.shape[0])
    out[0::2], out[1::2] = theta, phi
    return out


def random_points(n: int, rng: np.random.Generator) -> npt.NDArray[np.float64]:
    """``n`` independent uniform points on the unit sphere."""
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def _restart(
    t: int, n: int, seed: int, k: int, opts: SolverOptions
) -> tuple[float, npt.NDArray[np.float64]]:
    rng = np.random.default_rng([seed, k])
    x0 = _to_angles(random_points(n, rng))

    def residuals(x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return harmonic_sums(_to_points(x), t)[1:]

    fit = least_squares(
        residuals,
        x0,
        jac="3-point",
        method="trf",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=opts.max_nfev,
    )
    points = _to_points(fit.x)
    residual = float(verify_design(points, t).residuals.max())
    return residual, points


def solve_design(
    t: int,
    n: int | None = None,
    seed: int = 0,
    opts: SolverOptions | None = None,
) -> TDesign:
    """Search for an ``n``-point t-design.

    ``n`` defaults to ``default_design_size(t)``. Raises ``SolverError``
    carrying the best residual when no restart certifies at ``opts.tol``.
    """
    opts = opts or SolverOptions()
    if t < 1 or t > MAX_DEGREE:
        msg = f"t must be in [1, {MAX_DEGREE}], got {t}"
        raise ValueError(msg)
    if n is None:
        n = default_design_size(t)
    if n < 2:
        msg = f"n must be >= 2, got {n}"
        raise ValueError(msg)

    best_residual = np.inf
    best_points: npt.NDArray[np.float64] | None = None
    for k in range(opts.restarts):
        residual, points = _restart(t, n, seed, k, opts)
        logger.debug("t=%d n=%d seed=%d restart %d: residual %.3e", t, n, seed, k, residual)
        if residual < best_residual:
            best_residual, best_points = residual, points
        if opts.stop_on_success and best_residual <= opts.tol:
            break

    if best_points is None or not best_residual <= opts.tol:
        msg = (
            f"No {n}-point {t}-design found in {opts.restarts} restarts "
            f"(seed {seed}, best residual {best_residual:.3e} > {opts.tol:g})"
        )
        raise SolverError(msg, float(best_residual))

    logger.info(
        "Solved %d-design with %d points (seed %d, residual %.3e)", t, n, seed, best_residual
    )
    return TDesign(best_points, t, Provenance.SOLVED, best_residual)
