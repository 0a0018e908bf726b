"""Two-body entanglement through orientation-dependent interactions.

Bodies A and B, each in |R1> + |R2>, evolve for a time T into

    1/2 sum_ij exp(-i (E_ij + Delta_ij) T / hbar) |Ri Rj>

where E_ij is the A-B interaction energy with A in Ri and B in Rj and
Delta_ij collects local (single-body) perturbations. Only the combination

    E_ent = (E11 - E12) + (E22 - E21)

entangles the pair; the state is a product state exactly when
E_ent T / hbar is a multiple of 2 pi.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from tdesign_rotors.constants import DIAMOND_DENSITY, GRAVITATIONAL_G, HBAR, TWO_PI
from tdesign_rotors.design_factory import load_design_safe
from tdesign_rotors.designs import TDesign
from tdesign_rotors.errors import OverlapError, PointFileError, SolverError, UnknownDesignError
from tdesign_rotors.fields import (
    SourceModel,
    interaction_energy,
    point_source,
    potential_difference,
)
from tdesign_rotors.geometry import (
    Kind,
    OrientationPair,
    RigidBody,
    as_vec3,
    CompositeSpec,
    check_separated,
)
from tdesign_rotors.optimize import OptimizerConfig, optimize_pair
from tdesign_rotors.phases import PhaseScenario, ScalingRow, energy_to_hz, phase_rate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairEnergies:
    """E_ij in J: body A in orientation Ri, body B in Rj."""

    e11: float
    e12: float
    e21: float
    e22: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.e11, self.e12, self.e21, self.e22)

    def bodies_swapped(self) -> PairEnergies:
        """Energies with the roles of A and B exchanged."""
        return PairEnergies(self.e11, self.e21, self.e12, self.e22)


def pair_energies(
    a: RigidBody,
    b: RigidBody,
    pair_a: OrientationPair,
    pair_b: OrientationPair,
    separation: npt.ArrayLike,
) -> PairEnergies:
    """Exact interaction energy in each of the four branches; B sits at ``separation``."""
    sep = as_vec3(separation)
    energies = []
    for ra in pair_a:
        body_a = a.rotated(ra)
        for rb in pair_b:
            body_b = b.rotated(rb).translated(sep)
            check_separated(body_a, body_b)
            energies.append(interaction_energy(body_a, body_b))
    return PairEnergies(*energies)


def entangling_energy(pe: PairEnergies) -> float:
    """E_ent = (E11 - E12) + (E22 - E21), in J."""
    return (pe.e11 - pe.e12) + (pe.e22 - pe.e21)


def noise_deltas(
    a: RigidBody,
    b: RigidBody,
    pair_a: OrientationPair,
    pair_b: OrientationPair,
    noise: SourceModel,
    separation: npt.ArrayLike,
) -> tuple[float, float, float, float]:
    """Local energies Delta_ij = Delta_A(Ri) + Delta_B(Rj), in J.

    Each single-body term is measured from that body's R1 branch, so
    Delta_11 = 0; the dropped offset is a global phase.
    """
    noise_b = noise.translated(-as_vec3(separation))
    da = (0.0, potential_difference(a, pair_a.r2, pair_a.r1, noise))
    db = (0.0, potential_difference(b, pair_b.r2, pair_b.r1, noise_b))
    return (da[0] + db[0], da[0] + db[1], da[1] + db[0], da[1] + db[1])


@dataclass(frozen=True)
class TwoBodyState:
    """Equal-amplitude four-branch phase state, branch order 11, 12, 21, 22."""

    phases: tuple[float, float, float, float]

    @property
    def amplitudes(self) -> npt.NDArray[np.complex128]:
        return 0.5 * np.exp(-1j * np.asarray(self.phases))

    @property
    def combined_phase(self) -> float:
        p11, p12, p21, p22 = self.phases
        return (p11 - p12) - (p21 - p22)


def evolve(
    pe: PairEnergies,
    deltas: Sequence[float] = (0.0, 0.0, 0.0, 0.0),
    time: float = 1.0,
) -> TwoBodyState:
    """Branch phases (E_ij + Delta_ij) T / hbar after a time T.

    Energies are referenced to branch 11 before scaling by T, which only
    changes the global phase.
    """
    if time < 0.0:
        msg = f"Evolution time must be >= 0, got {time}"
        raise ValueError(msg)
    if len(deltas) != 4:
        msg = f"Expected 4 branch deltas, got {len(deltas)}"
        raise ValueError(msg)
    e = pe.as_tuple()
    phases = tuple(((e[k] - e[0]) + (deltas[k] - deltas[0])) * time / HBAR for k in range(4))
    return TwoBodyState(phases)


def concurrence(state: TwoBodyState) -> float:
    """|sin(combined phase / 2)| for the equal-amplitude phase state."""
    return abs(math.sin(state.combined_phase / 2.0))


def wootters_concurrence(psi_or_rho: npt.ArrayLike) -> float:
    """General two-qubit concurrence from a ket (4,) or density matrix (4, 4).

    A ket uses the closed form 2 |a d - b c|; a density matrix goes through
    the spin-flipped eigenvalues.
    """
    arr = np.asarray(psi_or_rho, dtype=np.complex128)
    if arr.shape == (4,):
        a, b, c, d = arr
        return float(2.0 * abs(a * d - b * c))
    if arr.shape != (4, 4):
        msg = f"Expected a two-qubit state, got shape {arr.shape}"
        raise ValueError(msg)
    rho = arr
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    sysy = np.kron(sy, sy)
    rho_tilde = rho @ sysy @ rho.conj() @ sysy
    evals = np.sort(np.abs(np.linalg.eigvals(rho_tilde).real))[::-1]
    lam = np.sqrt(evals)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


# ---------------------------------------------------------------------------
# Case studies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioReport:
    """E_ent and noise rates at the optimized pair, plus the robustness check.

    The pair is entangling and robust at time T when the entangling phase
    |E_ent| T / hbar is at least ten times the noise phase |Delta| T and is
    not a multiple of 2 pi.
    """

    t: int
    n_points: int
    e_ent_hz: float
    delta_noise_hz: float
    delta_signal_hz: float | None
    time_s: float
    pair: OrientationPair

    @property
    def entangling_phase(self) -> float:
        return abs(self.e_ent_hz) * TWO_PI * self.time_s

    @property
    def noise_phase(self) -> float:
        return abs(self.delta_noise_hz) * TWO_PI * self.time_s

    @property
    def concurrence(self) -> float:
        return abs(math.sin(self.entangling_phase / 2.0))

    @property
    def robust(self) -> bool:
        phase = self.entangling_phase
        off_lattice = abs(math.remainder(phase, TWO_PI)) > 1e-12 * max(1.0, phase)
        return phase >= 10.0 * self.noise_phase and off_lattice

    def to_row(self) -> ScalingRow:
        ratio = None
        if self.delta_signal_hz is not None:
            noise = self.delta_noise_hz
            ratio = math.inf if noise == 0.0 else self.delta_signal_hz / noise
        return ScalingRow(
            self.t, self.n_points, self.delta_signal_hz, self.delta_noise_hz, ratio, self.e_ent_hz
        )


def _entangling_objective(
    a: RigidBody, b: RigidBody, separation: npt.NDArray[np.float64]
) -> Callable[[OrientationPair], float]:
    def objective(pair: OrientationPair) -> float:
        try:
            pe = pair_energies(a, b, pair, pair, separation)
        except OverlapError:
            # a colliding branch scores as non-entangling
            return 0.0
        return abs(entangling_energy(pe))

    return objective


@dataclass(frozen=True)
class GravityParams:
    """Two diamond sphere composites coupled by gravity, perturbed by a distant mass."""

    density: float = DIAMOND_DENSITY
    central_radius: float = 10e-6
    total_mass: float = 1.83e-11
    separation: tuple[float, float, float] = (0.0, 0.0, 200e-6)
    noise_mass: float = 100.0
    noise_distance: float = 20.0
    time_s: float = 1.0
    optimizer: OptimizerConfig = field(default_factory=lambda: OptimizerConfig(restarts=8))

    def __post_init__(self) -> None:
        CompositeSpec(self.central_radius, self.total_mass, self.density)
        if not np.linalg.norm(self.separation) > 0.0:
            msg = "separation must be a non-zero vector"
            raise ValueError(msg)

    def noise_source(self) -> SourceModel:
        """The perturbing mass, on the separation axis, measured from body A."""
        axis = as_vec3(self.separation)
        axis = axis / np.linalg.norm(axis)
        return point_source(axis * self.noise_distance, self.noise_mass, Kind.MASS)

    @property
    def composite(self) -> CompositeSpec:
        return CompositeSpec(self.central_radius, self.total_mass, self.density)


def gravitational_scenario(
    t: int,
    params: GravityParams | None = None,
    design: TDesign | None = None,
) -> ScenarioReport:
    """Optimize a shared orientation pair for |E_ent| and report rates in Hz.

    ``delta_noise_hz`` is the larger of the two bodies' rates in the field of
    the perturbing mass.

    Pairs whose spheres collide in some branch score zero during the
    search; ``OverlapError`` is raised when the best pair found still collides.
    """
    params = params or GravityParams()
    design = design or load_design_safe(t)
    body = params.composite.build(design)
    sep = as_vec3(params.separation)

    pair, value = optimize_pair(_entangling_objective(body, body, sep), params.optimizer)
    e_ent = energy_to_hz(entangling_energy(pair_energies(body, body, pair, pair, sep)))

    noise = params.noise_source()
    noise_a = phase_rate(body, pair, noise).magnitude_hz
    noise_b = phase_rate(body, pair, noise.translated(-sep)).magnitude_hz
    logger.info(
        "Gravity t=%d: |E_ent| %.4g Hz, noise %.4g Hz (objective %.4g J)",
        t, abs(e_ent), max(noise_a, noise_b), value,
    )
    return ScenarioReport(
        t, design.n_points, abs(e_ent), max(noise_a, noise_b), None, params.time_s, pair
    )


def monopole_energy(params: GravityParams | None = None) -> float:
    """Monopole-monopole energy -G m^2 / d of the two composites, in J."""
    params = params or GravityParams()
    return -GRAVITATIONAL_G * params.total_mass**2 / float(np.linalg.norm(params.separation))


def electrostatic_study(
    scenario: PhaseScenario,
    t_list: Sequence[int],
    separation: npt.ArrayLike = (0.0, 0.0, 10e-6),
    time_s: float = 1.0,
) -> list[tuple[int, ScenarioReport | None]]:
    """Two identical charged bodies; per t, optimize |E_ent| and report rates at that pair.

    Returns (t, report) in order of t; the report is ``None`` when the
    design for that order cannot be produced.
    """
    if not t_list:
        msg = "electrostatic_study needs at least one design order"
        raise ValueError(msg)
    sep = as_vec3(separation)
    out: list[tuple[int, ScenarioReport | None]] = []
    for t in sorted(set(t_list)):
        try:
            design = scenario.design_loader(t)
        except (SolverError, UnknownDesignError, PointFileError) as exc:
            logger.warning("t=%d skipped: %s", t, exc)
            out.append((t, None))
            continue
        body = scenario.body(design)
        pair, _ = optimize_pair(_entangling_objective(body, body, sep), scenario.optimizer)
        e_ent = energy_to_hz(entangling_energy(pair_energies(body, body, pair, pair, sep)))
        signal = phase_rate(body, pair, scenario.signal).magnitude_hz
        noise = phase_rate(body, pair, scenario.noise).magnitude_hz
        logger.info("Electrostatic t=%d: |E_ent| %.4g Hz, noise %.4g Hz", t, abs(e_ent), noise)
        out.append((t, ScenarioReport(t, design.n_points, abs(e_ent), noise, signal, time_s, pair)))
    return out
