"""Decoherence-free spin subspaces from pairs of t-designs.

Spins pointing up sit on a t-design D and spins pointing down on a rotated
copy R D. In a scalar field B(x) coupling as moment * B, the states
|1...1 0...0> and |0...0 1...1> see energies +E and -E with

    E = moment * (sum_{x in D} B(x) - sum_{x in R D} B(x))

For any polynomial B of degree <= t both sums equal N times the sphere
average of B, so E vanishes and the pair spans a subspace that does not
dephase.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from tdesign_rotors.constants import BOHR_MAGNETON, HBAR, MAX_DEGREE
from tdesign_rotors.designs import TDesign, monomial_exponents
from tdesign_rotors.geometry import Rotation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpinConfiguration:
    """Spin sites (N, 3) in m with signs +1 (up, |1>) or -1 (down, |0>)."""

    positions: npt.NDArray[np.float64]
    signs: npt.NDArray[np.int64]
    moment: float = BOHR_MAGNETON

    def __post_init__(self) -> None:
        pos = np.array(self.positions, dtype=np.float64).reshape(-1, 3)
        signs = np.array(self.signs, dtype=np.int64).reshape(-1)
        if pos.shape[0] != signs.shape[0]:
            msg = f"{pos.shape[0]} sites but {signs.shape[0]} signs"
            raise ValueError(msg)
        if not np.all(np.isin(signs, (-1, 1))):
            msg = "Spin signs must be +1 or -1"
            raise ValueError(msg)
        pos.setflags(write=False)
        signs.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "signs", signs)

    @property
    def balanced(self) -> bool:
        return int(self.signs.sum()) == 0

    def flipped(self) -> SpinConfiguration:
        return SpinConfiguration(self.positions, -self.signs, self.moment)


def dfs_configuration(
    design: TDesign,
    r: Rotation,
    radius: float = 1.0,
    moment: float = BOHR_MAGNETON,
) -> SpinConfiguration:
    """Up spins on ``radius * D``, down spins on ``radius * (r D)``."""
    up = radius * design.points
    down = radius * r.apply(design.points)
    n = design.n_points
    return SpinConfiguration(
        np.vstack([up, down]),
        np.concatenate([np.ones(n, dtype=np.int64), -np.ones(n, dtype=np.int64)]),
        moment,
    )


@dataclass(frozen=True, eq=False)
class FieldPolynomial:
    """B(x, y, z) = sum_k c_k x^a_k y^b_k z^c_k, in T."""

    degree: int
    exponents: tuple[tuple[int, int, int], ...]
    coefficients: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.degree < 0 or self.degree > MAX_DEGREE:
            msg = f"Field degree must be in [0, {MAX_DEGREE}], got {self.degree}"
            raise ValueError(msg)
        if len(self.exponents) != len(self.coefficients):
            msg = f"{len(self.exponents)} monomials but {len(self.coefficients)} coefficients"
            raise ValueError(msg)
        if any(sum(e) > self.degree for e in self.exponents):
            msg = f"Monomial exceeds the declared degree {self.degree}"
            raise ValueError(msg)
        coeff = np.array(self.coefficients, dtype=np.float64)
        coeff.setflags(write=False)
        object.__setattr__(self, "exponents", tuple(tuple(e) for e in self.exponents))
        object.__setattr__(self, "coefficients", coeff)

    @classmethod
    def constant(cls, value: float) -> FieldPolynomial:
        return cls(0, ((0, 0, 0),), np.array([value]))

    def __call__(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        exps = np.array(self.exponents, dtype=np.int64).reshape(-1, 3)
        monomials = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return monomials @ self.coefficients


def random_polynomial(degree: int, rng: np.random.Generator) -> FieldPolynomial:
    """Every monomial of total degree <= ``degree`` with a coefficient uniform in [-1, 1]."""
    exps = monomial_exponents(degree)
    return FieldPolynomial(degree, tuple(exps), rng.uniform(-1.0, 1.0, len(exps)))


def _up_down_sums(cfg: SpinConfiguration, field: FieldPolynomial) -> tuple[float, float]:
    values = field(cfg.positions)
    return float(values[cfg.signs > 0].sum()), float(values[cfg.signs < 0].sum())


def spin_energy(cfg: SpinConfiguration, field: FieldPolynomial) -> float:
    """moment * sum_i sign_i B(x_i), in J."""
    up, down = _up_down_sums(cfg, field)
    return cfg.moment * (up - down)


def basis_rates(cfg: SpinConfiguration, field: FieldPolynomial) -> tuple[float, float]:
    """Phase rates (rad/s) of |1...1 0...0> and |0...0 1...1>; always opposite."""
    e = spin_energy(cfg, field)
    return e / HBAR, -e / HBAR


@dataclass(frozen=True)
class DFSRow:
    degree: int
    max_phase_rate: float
    max_relative: float


@dataclass(frozen=True)
class DFSReport:
    """Worst relative phase rate per field degree.

    ``max_relative`` divides |E| by moment * sum_up |B|, the energy scale of
    one spin set.
    """

    t: int
    rows: tuple[DFSRow, ...]
    tol: float

    def row(self, degree: int) -> DFSRow:
        return self.rows[degree - 1]

    @property
    def protected(self) -> bool:
        """Every degree up to the design order stays below ``tol``."""
        return all(r.max_relative <= self.tol for r in self.rows if r.degree <= self.t)


def dfs_check(
    design: TDesign,
    r: Rotation,
    field_degree: int,
    trials: int = 100,
    seed: int = 0,
    *,
    radius: float = 1.0,
    moment: float = BOHR_MAGNETON,
    tol: float = 1e-10,
) -> DFSReport:
    """Relative phase rate 2E/hbar between the two DFS basis states under random fields."""
    if field_degree < 1:
        msg = f"field_degree must be >= 1, got {field_degree}"
        raise ValueError(msg)
    if trials < 1:
        msg = f"trials must be >= 1, got {trials}"
        raise ValueError(msg)
    cfg = dfs_configuration(design, r, radius, moment)
    up_sites = cfg.positions[cfg.signs > 0]
    rng = np.random.default_rng(seed)

    rows = []
    for degree in range(1, field_degree + 1):
        worst_rate = worst_rel = 0.0
        for _ in range(trials):
            field = random_polynomial(degree, rng)
            energy = spin_energy(cfg, field)
            scale = moment * float(np.abs(field(up_sites)).sum())
            worst_rate = max(worst_rate, abs(2.0 * energy / HBAR))
            worst_rel = max(worst_rel, abs(energy) / scale if scale > 0.0 else 0.0)
        rows.append(DFSRow(degree, worst_rate, worst_rel))
        logger.debug("degree %d: max rate %.3e rad/s, relative %.3e", degree, worst_rate, worst_rel)
    return DFSReport(design.t, tuple(rows), tol)
