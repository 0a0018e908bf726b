"""Source models, exact potentials and interior multipole expansions.

A source model is a set of point charges (C) or point masses (kg). Its
potential at x is

    phi(x) = k * sum_s q_s / |x - x_s|,   k = COULOMB_K (charge) or -G (mass)

Inside the ball |x| < min_s |x_s| the potential expands in regular solid
harmonics about the origin:

    phi(x) = sum_{l, m} c_lm R_lm(x),
    c_lm   = k * sum_s q_s * 4 pi / (2l + 1) * Y_lm(x_s) / |x_s|^(l + 1)

(addition theorem for the orthonormal real basis in ``harmonics``). The
degree-l term is the solid-harmonic form of the order-l Cartesian moment.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from tdesign_rotors.constants import COULOMB_K, GRAVITATIONAL_G, MAX_DEGREE
from tdesign_rotors.errors import KindMismatchError, OverlapError
from tdesign_rotors.geometry import Kind, RigidBody, Rotation, as_vec3, check_separated
from tdesign_rotors.harmonics import degree_slices, real_sph_harm, regular_solid_harmonics

logger = logging.getLogger(__name__)


def coupling(kind: Kind | str) -> float:
    """k in phi = k q / r: Coulomb constant for charges, -G for masses."""
    return COULOMB_K if Kind(kind) is Kind.CHARGE else -GRAVITATIONAL_G


@dataclass(frozen=True, eq=False)
class SourceModel:
    """Point sources of one kind; ``positions`` (K, 3) in m, ``strengths`` (K,)."""

    kind: Kind
    positions: npt.NDArray[np.float64]
    strengths: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        pos = np.array(self.positions, dtype=np.float64).reshape(-1, 3)
        q = np.array(self.strengths, dtype=np.float64).reshape(-1)
        if pos.shape[0] != q.shape[0]:
            msg = f"{pos.shape[0]} source positions but {q.shape[0]} strengths"
            raise ValueError(msg)
        if pos.shape[0] == 0:
            msg = "A source model needs at least one source"
            raise ValueError(msg)
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(q))):
            msg = "Source positions and strengths must be finite"
            raise ValueError(msg)
        pos.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "strengths", q)

    @property
    def total_strength(self) -> float:
        return float(self.strengths.sum())

    @property
    def min_distance(self) -> float:
        """Distance from the origin to the nearest source."""
        return float(np.linalg.norm(self.positions, axis=1).min())

    def rotated(self, r: Rotation) -> SourceModel:
        return SourceModel(self.kind, r.apply(self.positions), self.strengths)

    def translated(self, offset: npt.ArrayLike) -> SourceModel:
        return SourceModel(self.kind, self.positions + as_vec3(offset), self.strengths)

    def scaled(self, factor: float) -> SourceModel:
        return SourceModel(self.kind, self.positions, self.strengths * factor)

    def merged(self, other: SourceModel) -> SourceModel:
        _check_kind(self.kind, other.kind)
        return SourceModel(
            self.kind,
            np.vstack([self.positions, other.positions]),
            np.concatenate([self.strengths, other.strengths]),
        )


def point_source(position: npt.ArrayLike, strength: float, kind: Kind | str) -> SourceModel:
    return SourceModel(Kind(kind), as_vec3(position)[None, :], np.array([float(strength)]))


def _check_kind(body_kind: Kind, src_kind: Kind) -> None:
    if Kind(body_kind) is not Kind(src_kind):
        body_name, field_name = Kind(body_kind).value, Kind(src_kind).value
        msg = f"A {body_name} body cannot be evaluated in a {field_name} field"
        raise KindMismatchError(msg)


def potential_at(src: SourceModel, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Exact potential at each row of an (N, 3) array."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    dist = np.linalg.norm(pts[:, None, :] - src.positions[None, :, :], axis=2)
    if np.any(dist == 0.0):
        msg = "Potential evaluated at a source position"
        raise OverlapError(msg)
    return coupling(src.kind) * (src.strengths[None, :] / dist).sum(axis=1)


def exact_potential(src: SourceModel, x: npt.ArrayLike) -> float:
    """phi(x) in J/C (charge) or J/kg (mass)."""
    return float(potential_at(src, as_vec3(x)[None, :])[0])


# ---------------------------------------------------------------------------
# Multipole expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MultipoleExpansion:
    """Interior expansion coefficients c_lm for 0 <= l <= order.

    ``radius`` is the convergence radius, the distance to the nearest source.
    """

    order: int
    coefficients: npt.NDArray[np.float64]
    kind: Kind
    radius: float

    def degree(self, l: int) -> npt.NDArray[np.float64]:
        """c_lm for m = -l..l."""
        return self.coefficients[degree_slices(l)[l]]


def expand(src: SourceModel, n_max: int) -> MultipoleExpansion:
    """Regular solid-harmonic expansion of ``src`` about the origin up to degree n_max."""
    if n_max < 0 or n_max > MAX_DEGREE:
        msg = f"Expansion order must be in [0, {MAX_DEGREE}], got {n_max}"
        raise ValueError(msg)
    dist = np.linalg.norm(src.positions, axis=1)
    if np.any(dist == 0.0):
        msg = "Cannot expand about the origin: a source sits there"
        raise ValueError(msg)
    harm = real_sph_harm(src.positions, n_max)
    coeff = np.zeros(harm.shape[1])
    for l, cols in enumerate(degree_slices(n_max)):
        weights = src.strengths * 4.0 * math.pi / (2 * l + 1) / dist ** (l + 1)
        coeff[cols] = weights @ harm[:, cols]
    coeff *= coupling(src.kind)
    coeff.setflags(write=False)
    return MultipoleExpansion(n_max, coeff, src.kind, float(dist.min()))


def _check_inside(exp: MultipoleExpansion, pts: npt.NDArray[np.float64]) -> None:
    r = float(np.linalg.norm(pts, axis=1).max(initial=0.0))
    if r >= exp.radius:
        msg = f"|x| = {r:.6g} m is outside the expansion's convergence radius {exp.radius:.6g} m"
        raise ValueError(msg)


def _degree_terms(
    exp: MultipoleExpansion, pts: npt.NDArray[np.float64], order: int
) -> npt.NDArray[np.float64]:
    """(N, order + 1) array of the degree-l contributions at each point."""
    solid = regular_solid_harmonics(pts, order)
    coeff = exp.coefficients[: solid.shape[1]]
    return np.stack([solid[:, s] @ coeff[s] for s in degree_slices(order)], axis=1)


def eval_truncated(exp: MultipoleExpansion, x: npt.ArrayLike, order: int) -> float:
    """Partial sum of the expansion over degrees 0..order at x."""
    if order < 0 or order > exp.order:
        msg = f"order {order} outside the stored expansion range 0..{exp.order}"
        raise ValueError(msg)
    pts = as_vec3(x)[None, :]
    _check_inside(exp, pts)
    return float(_degree_terms(exp, pts, order).sum())


# ---------------------------------------------------------------------------
# Body energies
# ---------------------------------------------------------------------------


def degree_energy(body: RigidBody, exp: MultipoleExpansion, l: int) -> float:
    """Degree-l part of sum_i w_i phi(p_i)."""
    _check_kind(body.kind, exp.kind)
    if l < 0 or l > exp.order:
        msg = f"degree {l} outside the stored expansion range 0..{exp.order}"
        raise ValueError(msg)
    if body.n_elements == 0:
        return 0.0
    _check_inside(exp, body.positions)
    return float(body.weights @ _degree_terms(exp, body.positions, l)[:, l])


def potential_energy(body: RigidBody, src: SourceModel, order: int | None = None) -> float:
    """Energy sum_i w_i phi(p_i) of a body in a source field, in J.

    ``order=None`` sums the exact potential; an integer evaluates the
    multipole expansion truncated at that degree, which requires the body
    to lie inside the convergence radius. Spheres enter through their
    centers and masses.
    """
    _check_kind(body.kind, src.kind)
    if body.n_elements == 0:
        return 0.0
    if order is None:
        return float(body.weights @ potential_at(src, body.positions))
    exp = expand(src, order)
    _check_inside(exp, body.positions)
    return float(body.weights @ _degree_terms(exp, body.positions, order).sum(axis=1))


def potential_difference(
    body: RigidBody,
    r1: Rotation,
    r2: Rotation,
    src: SourceModel,
) -> float:
    """V(r1 body) - V(r2 body) from exact potentials without cancellation.

    Uses 1/d1 - 1/d2 = (x2 - x1).(x2 + x1 - 2s) / (d1 d2 (d1 + d2)), which
    stays accurate when both distances agree to many digits and is exactly
    antisymmetric in (r1, r2).
    """
    _check_kind(body.kind, src.kind)
    if body.n_elements == 0:
        return 0.0
    x1 = r1.apply(body.positions)[:, None, :]
    x2 = r2.apply(body.positions)[:, None, :]
    s = src.positions[None, :, :]
    d1 = np.linalg.norm(x1 - s, axis=2)
    d2 = np.linalg.norm(x2 - s, axis=2)
    if np.any(d1 == 0.0) or np.any(d2 == 0.0):
        msg = "Body element coincides with a source"
        raise OverlapError(msg)
    num = np.sum((x2 - x1) * (x2 + x1 - 2.0 * s), axis=2)
    inv_diff = num / (d1 * d2 * (d1 + d2))
    per_element = inv_diff @ src.strengths
    return coupling(src.kind) * float(body.weights @ per_element)


def degree_difference(
    body: RigidBody,
    r1: Rotation,
    r2: Rotation,
    exp: MultipoleExpansion,
    l: int,
) -> float:
    """Degree-l part of V(r1 body) - V(r2 body)."""
    return degree_energy(body.rotated(r1), exp, l) - degree_energy(body.rotated(r2), exp, l)


def interaction_energy(a: RigidBody, b: RigidBody) -> float:
    """Exact pairwise energy between two bodies of the same kind, in J.

    The double sum is accumulated with ``math.fsum`` so E(a, b) == E(b, a)
    bit for bit.
    """
    if a.kind is not b.kind:
        msg = f"Cannot couple a {a.kind.value} body to a {b.kind.value} body"
        raise KindMismatchError(msg)
    check_separated(a, b)
    if a.n_elements == 0 or b.n_elements == 0:
        return 0.0
    dist = np.linalg.norm(a.positions[:, None, :] - b.positions[None, :, :], axis=2)
    terms = (a.weights[:, None] * b.weights[None, :]) / dist
    return coupling(a.kind) * math.fsum(terms.ravel())
