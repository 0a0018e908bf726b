"""Derivative-free maximization over orientation pairs.

Each restart draws a Haar-random pair, then runs Nelder-Mead in the
6-dimensional rotation-vector chart

    v = (v1, v2)  ->  (exp(v1) c1, exp(v2) c2)

around the current center (c1, c2). After a pass converges the chart is
re-centred on the result and searched again with a smaller simplex, until
a pass stops improving. Re-centring keeps every iterate near the chart
origin, away from the angle-pi singularity of the rotation vector.

Restart k draws from child k of ``SeedSequence(seed)``, so a run with
more restarts replays the runs with fewer and its best value can only
grow.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize

from tdesign_rotors.errors import OptimizationError
from tdesign_rotors.geometry import OrientationPair, Rotation, random_rotation

logger = logging.getLogger(__name__)

Objective = Callable[[OrientationPair], float]

_FIRST_STEP = 0.5
_REFINE_STEP = 0.05
_MAX_PASSES = 8


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    seed: int = 0
    max_iters: int = 2000
    xtol: float = 1e-10
    ftol: float = 1e-12

    def __post_init__(self) -> None:
        if self.restarts < 1:
            msg = f"restarts must be >= 1, got {self.restarts}"
            raise ValueError(msg)
        if self.max_iters < 1:
            msg = f"max_iters must be >= 1, got {self.max_iters}"
            raise ValueError(msg)


class _NonFiniteObjective(Exception):
    pass


def _chart(center: OrientationPair, v: npt.NDArray[np.float64]) -> OrientationPair:
    return OrientationPair(
        Rotation.from_rotvec(v[:3]).compose(center.r1),
        Rotation.from_rotvec(v[3:]).compose(center.r2),
    )


def _simplex(step: float) -> npt.NDArray[np.float64]:
    return np.vstack([np.zeros(6), step * np.eye(6)])


def _evaluate(objective: Objective, pair: OrientationPair) -> float:
    value = float(objective(pair))
    if not math.isfinite(value):
        raise _NonFiniteObjective(value)
    return value


def _local_search(
    objective: Objective,
    start: OrientationPair,
    start_value: float,
    cfg: OptimizerConfig,
) -> tuple[OrientationPair, float]:
    center, best = start, start_value
    fatol = cfg.ftol * max(abs(start_value), math.ulp(1.0))
    for n_pass in range(_MAX_PASSES):
        step = _FIRST_STEP if n_pass == 0 else _REFINE_STEP
        fit = minimize(
            lambda v, c=center: -_evaluate(objective, _chart(c, v)),
            np.zeros(6),
            method="Nelder-Mead",
            options={
                "initial_simplex": _simplex(step),
                "xatol": cfg.xtol,
                "fatol": fatol,
                "maxiter": cfg.max_iters,
            },
        )
        candidate = _chart(center, fit.x)
        value = _evaluate(objective, candidate)
        if not value > best:
            break
        center, best = candidate, value
    return center, best


def optimize_pair(
    objective: Objective, cfg: OptimizerConfig | None = None
) -> tuple[OrientationPair, float]:
    """Best (pair, objective(pair)) over ``cfg.restarts`` local searches.

    A restart whose objective turns non-finite is discarded with a warning;
    if every restart is discarded ``OptimizationError`` is raised. Exact ties
    go to the lowest restart index.
    """
    cfg = cfg or OptimizerConfig()
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    best_pair: OrientationPair | None = None
    best_value = -math.inf
    discarded = 0
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        start = OrientationPair(random_rotation(rng), random_rotation(rng))
        try:
            start_value = _evaluate(objective, start)
            pair, value = _local_search(objective, start, start_value, cfg)
        except _NonFiniteObjective as exc:
            discarded += 1
            logger.warning("Restart %d discarded: objective returned %s", k, exc.args[0])
            continue
        logger.debug("Restart %d: start %.6g -> %.6g", k, start_value, value)
        if value > best_value:
            best_pair, best_value = pair, value

    if best_pair is None:
        msg = f"All {cfg.restarts} optimizer restarts returned non-finite objective values"
        raise OptimizationError(msg)
    logger.info(
        "Orientation search: best %.6g over %d restarts (%d discarded)",
        best_value, cfg.restarts, discarded,
    )
    return best_pair, best_value
