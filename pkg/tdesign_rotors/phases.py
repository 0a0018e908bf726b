"""Relative-phase rates between orientation branches and t-scaling studies.

A body held in the superposition |R1> + |R2> inside a static field picks up
the relative phase rate

    Delta = [V(R1 body) - V(R2 body)] / hbar        (rad/s)

reported in Hz as Delta / 2 pi. For a t-design body the difference vanishes
through degree t of the field's multipole expansion, so far-field rates
fall off as (R/L)^(t+1).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from tdesign_rotors.constants import HBAR, TWO_PI
from tdesign_rotors.design_factory import load_design_safe
from tdesign_rotors.designs import TDesign
from tdesign_rotors.errors import PointFileError, SolverError, UnknownDesignError
from tdesign_rotors.fields import (
    SourceModel,
    degree_difference,
    expand,
    potential_difference,
    potential_energy,
)
from tdesign_rotors.geometry import (
    CompositeSpec,
    Kind,
    OrientationPair,
    RigidBody,
    Rotation,
    build_body,
)
from tdesign_rotors.optimize import OptimizerConfig, optimize_pair

logger = logging.getLogger(__name__)

__all__ = [
    "NoisePair",
    "OrientationPair",
    "PhaseRate",
    "PhaseScenario",
    "ScalingRow",
    "SignalNoise",
    "default_pair",
    "degree_rate",
    "energy_to_hz",
    "phase_rate",
    "scaling_study",
    "signal_noise",
]


def energy_to_hz(energy: float) -> float:
    """Energy in J to a frequency in cycles per second: E / hbar / 2 pi."""
    return energy / HBAR / TWO_PI


@dataclass(frozen=True)
class PhaseRate:
    """Signed relative phase rate; ``rad_s`` is [V(R1) - V(R2)] / hbar."""

    rad_s: float

    @classmethod
    def from_energy(cls, energy: float) -> PhaseRate:
        return cls(energy / HBAR)

    @property
    def hz(self) -> float:
        return self.rad_s / TWO_PI

    @property
    def magnitude_hz(self) -> float:
        return abs(self.hz)


def phase_rate(
    body: RigidBody,
    pair: OrientationPair,
    src: SourceModel,
    order: int | None = None,
) -> PhaseRate:
    """Relative phase rate of ``body`` between the two branches of ``pair``.

    With ``order=None`` the exact potential is used; an integer order uses
    the multipole expansion truncated at that degree.
    """
    if order is None:
        return PhaseRate.from_energy(potential_difference(body, pair.r1, pair.r2, src))
    v1 = potential_energy(body.rotated(pair.r1), src, order)
    v2 = potential_energy(body.rotated(pair.r2), src, order)
    return PhaseRate.from_energy(v1 - v2)


def degree_rate(body: RigidBody, pair: OrientationPair, src: SourceModel, l: int) -> PhaseRate:
    """Contribution of the degree-l multipole term alone."""
    exp = expand(src, l)
    return PhaseRate.from_energy(degree_difference(body, pair.r1, pair.r2, exp, l))


@dataclass(frozen=True)
class SignalNoise:
    delta_signal: PhaseRate
    delta_noise: PhaseRate

    @property
    def ratio(self) -> float:
        """|signal| / |noise|; ``inf`` when the noise rate is exactly zero."""
        noise = abs(self.delta_noise.rad_s)
        if noise == 0.0:
            return math.inf
        return abs(self.delta_signal.rad_s) / noise

    @property
    def infinite_ratio(self) -> bool:
        return math.isinf(self.ratio)


def signal_noise(
    body: RigidBody,
    pair: OrientationPair,
    signal_src: SourceModel,
    noise_src: SourceModel,
) -> SignalNoise:
    return SignalNoise(phase_rate(body, pair, signal_src), phase_rate(body, pair, noise_src))


def default_pair(body: RigidBody) -> OrientationPair:
    """Identity and a quarter turn about an axis normal to the largest-moment direction.

    The axis is e x (1, 2, 3) normalized (e x (0, 1, 0) when e is parallel
    to (1, 2, 3)), which avoids the cube axes that would map symmetric
    designs onto themselves.
    """
    e = body.largest_moment_direction()
    axis = np.cross(e, [1.0, 2.0, 3.0])
    if np.linalg.norm(axis) < 1e-12:
        axis = np.cross(e, [0.0, 1.0, 0.0])
    return OrientationPair(Rotation.identity(), Rotation.from_axis_angle(axis, math.pi / 2.0))


# ---------------------------------------------------------------------------
# Scaling study
# ---------------------------------------------------------------------------


class NoisePair(str, Enum):
    """Which pair the noise rate is evaluated at."""

    SIGNAL = "signal"
    WORST = "worst"


@dataclass(frozen=True)
class ScalingRow:
    """One design order of a scaling study; rates in Hz, magnitudes.

    Rows for orders whose design could not be produced carry ``None``.
    """

    t: int
    n_points: int | None
    delta_signal: float | None
    delta_noise: float | None
    ratio: float | None
    e_ent: float | None = None

    @property
    def missing(self) -> bool:
        return self.delta_signal is None

    @classmethod
    def missing_row(cls, t: int) -> ScalingRow:
        return cls(t, None, None, None, None)


@dataclass(frozen=True)
class PhaseScenario:
    """A t-design body in the fields of a signal and a noise source.

    Bodies are point elements at ``radius`` carrying ``unit_weight`` each, or
    sphere composites when ``composite`` is set (``radius`` and
    ``unit_weight`` are then unused).
    """

    radius: float
    unit_weight: float
    kind: Kind
    signal: SourceModel
    noise: SourceModel
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    noise_pair: NoisePair = NoisePair.SIGNAL
    design_loader: Callable[[int], TDesign] = load_design_safe
    composite: CompositeSpec | None = None

    def body(self, design: TDesign) -> RigidBody:
        if self.composite is not None:
            return self.composite.build(design)
        return build_body(design, self.radius, self.unit_weight, self.kind)


def _scaling_row(scenario: PhaseScenario, t: int, optimize: bool) -> ScalingRow:
    design = scenario.design_loader(t)
    body = scenario.body(design)

    if optimize:
        pair, _ = optimize_pair(
            lambda p: abs(phase_rate(body, p, scenario.signal).rad_s),
            scenario.optimizer,
        )
    else:
        pair = default_pair(body)

    rates = signal_noise(body, pair, scenario.signal, scenario.noise)
    noise = rates.delta_noise.magnitude_hz
    if NoisePair(scenario.noise_pair) is NoisePair.WORST:
        _, worst = optimize_pair(
            lambda p: abs(phase_rate(body, p, scenario.noise).rad_s),
            scenario.optimizer,
        )
        noise = max(noise, worst / TWO_PI)

    signal = rates.delta_signal.magnitude_hz
    ratio = math.inf if noise == 0.0 else signal / noise
    logger.info("t=%d: signal %.4g Hz, noise %.4g Hz, ratio %.4g", t, signal, noise, ratio)
    return ScalingRow(t, design.n_points, signal, noise, ratio)


def scaling_study(
    scenario: PhaseScenario,
    t_list: Sequence[int],
    optimize: bool = True,
) -> list[ScalingRow]:
    """One row per design order, ordered by t.

    An order whose design cannot be produced yields a missing row and the
    study carries on.
    """
    if not t_list:
        msg = "scaling_study needs at least one design order"
        raise ValueError(msg)
    rows = []
    for t in sorted(set(t_list)):
        try:
            rows.append(_scaling_row(scenario, t, optimize))
        except (SolverError, UnknownDesignError, PointFileError) as exc:
            logger.warning("t=%d skipped: %s", t, exc)
            rows.append(ScalingRow.missing_row(t))
    return rows
