"""Vectors, rotations and rigid bodies.

Rotations are unit quaternions stored scalar-first and canonicalized so the
scalar part is non-negative (q and -q describe the same rotation). The heavy
lifting (action on vectors, composition, rotation-vector charts) is delegated
to ``scipy.spatial.transform.Rotation``, which is scalar-last.

Rigid bodies are weighted point elements (charges in C or masses in kg)
plus, for mass bodies, the uniform spheres the elements stand for.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
from scipy.spatial.transform import Rotation as _SciRotation

from tdesign_rotors.constants import DIAMOND_DENSITY
from tdesign_rotors.errors import OverlapError

if TYPE_CHECKING:
    from tdesign_rotors.designs import TDesign

logger = logging.getLogger(__name__)

Vec3 = npt.NDArray[np.float64]


class Kind(str, Enum):
    """What the weights of a body or the strengths of a source measure."""

    CHARGE = "charge"
    MASS = "mass"


def as_vec3(v: npt.ArrayLike) -> Vec3:
    """Coerce to a finite float64 3-vector."""
    arr = np.asarray(v, dtype=np.float64).reshape(3)
    if not np.all(np.isfinite(arr)):
        msg = f"Vector components must be finite, got {arr}"
        raise ValueError(msg)
    return arr


# ---------------------------------------------------------------------------
# Rotations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rotation:
    """Orientation of a rigid body as a unit quaternion (w, x, y, z)."""

    q: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=np.float64).reshape(4)
        norm = float(np.linalg.norm(q))
        if not np.isfinite(norm) or norm == 0.0:
            msg = f"Quaternion must be finite and nonzero, got {self.q}"
            raise ValueError(msg)
        q = q / norm
        nonzero = np.flatnonzero(np.abs(q) > 0.0)
        if q[nonzero[0]] < 0.0:
            q = -q
        object.__setattr__(self, "q", tuple(float(c) for c in q))

    @classmethod
    def identity(cls) -> Rotation:
        return cls((1.0, 0.0, 0.0, 0.0))

    @classmethod
    def from_scipy(cls, rot: _SciRotation) -> Rotation:
        x, y, z, w = rot.as_quat()
        return cls((w, x, y, z))

    @classmethod
    def from_axis_angle(cls, axis: npt.ArrayLike, angle: float) -> Rotation:
        """Right-handed rotation by ``angle`` radians about ``axis``."""
        axis = as_vec3(axis)
        norm = float(np.linalg.norm(axis))
        if norm == 0.0:
            msg = "Rotation axis must be nonzero"
            raise ValueError(msg)
        return cls.from_rotvec(axis / norm * angle)

    @classmethod
    def from_rotvec(cls, rotvec: npt.ArrayLike) -> Rotation:
        return cls.from_scipy(_SciRotation.from_rotvec(as_vec3(rotvec)))

    @cached_property
    def _sci(self) -> _SciRotation:
        w, x, y, z = self.q
        return _SciRotation.from_quat([x, y, z, w])

    def apply(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Rotate a single vector (3,) or a stack of vectors (N, 3)."""
        return self._sci.apply(np.asarray(points, dtype=np.float64))

    def compose(self, other: Rotation) -> Rotation:
        """``self ∘ other``: apply ``other`` first, then ``self``."""
        return Rotation.from_scipy(self._sci * other._sci)

    __mul__ = compose

    def inverse(self) -> Rotation:
        w, x, y, z = self.q
        return Rotation((w, -x, -y, -z))

    def as_matrix(self) -> npt.NDArray[np.float64]:
        return self._sci.as_matrix()

    def as_rotvec(self) -> Vec3:
        return self._sci.as_rotvec()

    def angle(self) -> float:
        """Rotation angle in [0, pi]."""
        return float(2.0 * math.atan2(math.sqrt(sum(c * c for c in self.q[1:])), abs(self.q[0])))

    def angle_to(self, other: Rotation) -> float:
        """Geodesic distance on SO(3) between two orientations."""
        return self.inverse().compose(other).angle()


def rotate(r: Rotation, p: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Rotated copy of ``p`` (a vector or an (N, 3) stack)."""
    return r.apply(p)


def _as_generator(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_rotation(seed: int | np.random.Generator) -> Rotation:
    """Haar-uniform rotation: four standard normals, normalized."""
    rng = _as_generator(seed)
    return Rotation(tuple(rng.standard_normal(4)))


def random_rotations(count: int, seed: int | np.random.Generator) -> list[Rotation]:
    """``count`` Haar-uniform rotations from one generator."""
    rng = _as_generator(seed)
    return [Rotation(tuple(row)) for row in rng.standard_normal((count, 4))]


# ---------------------------------------------------------------------------
# Rigid bodies
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Sphere:
    """Uniform solid sphere, acting as a point mass at its center outside itself."""

    center: Vec3
    radius: float
    mass: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_vec3(self.center))
        if not self.radius > 0.0:
            msg = f"Sphere radius must be > 0, got {self.radius}"
            raise ValueError(msg)
        if self.mass < 0.0:
            msg = f"Sphere mass must be >= 0, got {self.mass}"
            raise ValueError(msg)


@dataclass(frozen=True, eq=False)
class RigidBody:
    """Weighted point elements positioned about the body origin.

    ``positions`` is (N, 3) in meters; ``weights`` is (N,) in coulombs or
    kilograms according to ``kind``. ``spheres`` is only populated for
    sphere-composite mass bodies, whose elements are the sphere centers.
    """

    positions: npt.NDArray[np.float64]
    weights: npt.NDArray[np.float64]
    kind: Kind
    spheres: tuple[Sphere, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        pos = np.array(self.positions, dtype=np.float64).reshape(-1, 3)
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        kind = Kind(self.kind)
        if pos.shape[0] != w.shape[0]:
            msg = f"{pos.shape[0]} positions but {w.shape[0]} weights"
            raise ValueError(msg)
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(w))):
            msg = "Element positions and weights must be finite"
            raise ValueError(msg)
        if self.spheres and kind is not Kind.MASS:
            msg = "Only mass bodies can carry spheres"
            raise ValueError(msg)
        pos.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "spheres", tuple(self.spheres))

    @property
    def n_elements(self) -> int:
        return int(self.positions.shape[0])

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    @property
    def extent(self) -> float:
        """Radius of the smallest origin-centred ball holding every element and sphere."""
        radii = [float(np.linalg.norm(p)) for p in self.positions]
        radii += [float(np.linalg.norm(s.center)) + s.radius for s in self.spheres]
        return max(radii, default=0.0)

    def rotated(self, r: Rotation) -> RigidBody:
        """Body rotated rigidly about its origin."""
        spheres = tuple(Sphere(r.apply(s.center), s.radius, s.mass) for s in self.spheres)
        return RigidBody(r.apply(self.positions), self.weights, self.kind, spheres)

    def translated(self, offset: npt.ArrayLike) -> RigidBody:
        offset = as_vec3(offset)
        spheres = tuple(Sphere(s.center + offset, s.radius, s.mass) for s in self.spheres)
        return RigidBody(self.positions + offset, self.weights, self.kind, spheres)

    def largest_moment_direction(self) -> Vec3:
        """Unit direction of the element with the largest |weight| * |position|.

        Ties go to the lowest index; a body with no off-origin element
        reports +z.
        """
        if self.n_elements == 0:
            return np.array([0.0, 0.0, 1.0])
        moments = np.abs(self.weights) * np.linalg.norm(self.positions, axis=1)
        i = int(np.argmax(moments))
        if moments[i] == 0.0:
            return np.array([0.0, 0.0, 1.0])
        return self.positions[i] / np.linalg.norm(self.positions[i])


def build_body(design: TDesign, radius: float, unit_weight: float, kind: Kind | str) -> RigidBody:
    """One element of weight ``unit_weight`` at ``radius * P_i`` per design point."""
    if not radius > 0.0:
        msg = f"Body radius must be > 0, got {radius}"
        raise ValueError(msg)
    n = len(design.points)
    return RigidBody(radius * design.points, np.full(n, float(unit_weight)), Kind(kind))


def sphere_mass(radius: float, density: float) -> float:
    return 4.0 / 3.0 * math.pi * radius**3 * density


def sphere_radius(mass: float, density: float) -> float:
    return (3.0 * mass / (4.0 * math.pi * density)) ** (1.0 / 3.0)


def attach_spheres(
    body: RigidBody,
    central_radius: float,
    peripheral_mass_each: float,
    *,
    central_mass: float | None = None,
    density: float | None = DIAMOND_DENSITY,
    total_mass: float | None = None,
) -> RigidBody:
    """Replace each element by a peripheral sphere resting on a central sphere.

    The central sphere sits at the origin. Each peripheral sphere of mass
    ``peripheral_mass_each`` takes its radius from ``density`` and is placed
    along its element's direction, tangent to the central sphere. A zero
    peripheral mass leaves only the central sphere. The returned elements are
    the sphere centers with the sphere masses (shell theorem).
    """
    if body.kind is not Kind.MASS:
        msg = "attach_spheres needs a mass body"
        raise ValueError(msg)
    if not central_radius > 0.0:
        msg = f"Central radius must be > 0, got {central_radius}"
        raise ValueError(msg)
    if peripheral_mass_each < 0.0 or (central_mass is not None and central_mass < 0.0):
        msg = "Sphere masses must be non-negative"
        raise ValueError(msg)
    if density is None and (central_mass is None or peripheral_mass_each > 0.0):
        msg = "Material density not set"
        raise ValueError(msg)

    if central_mass is None:
        central_mass = sphere_mass(central_radius, density)
    n_peripheral = body.n_elements if peripheral_mass_each > 0.0 else 0
    budget = central_mass + n_peripheral * peripheral_mass_each
    if total_mass is not None and budget > total_mass * (1.0 + 1e-12):
        msg = f"Sphere masses sum to {budget:.6g} kg, exceeding the {total_mass:.6g} kg budget"
        raise ValueError(msg)

    spheres = [Sphere(np.zeros(3), central_radius, central_mass)]
    if n_peripheral:
        r_p = sphere_radius(peripheral_mass_each, density)
        for p in body.positions:
            norm = float(np.linalg.norm(p))
            if norm == 0.0:
                msg = "Cannot place a peripheral sphere for an element at the origin"
                raise ValueError(msg)
            spheres.append(Sphere(p / norm * (central_radius + r_p), r_p, peripheral_mass_each))

    logger.debug(
        "Composite body: central %.4g kg, %d peripheral spheres of %.4g kg",
        central_mass, n_peripheral, peripheral_mass_each,
    )
    centers = np.array([s.center for s in spheres])
    masses = np.array([s.mass for s in spheres])
    return RigidBody(centers, masses, Kind.MASS, tuple(spheres))


def composite_body(
    design: TDesign,
    central_radius: float,
    total_mass: float,
    density: float = DIAMOND_DENSITY,
) -> RigidBody:
    """Sphere composite whose peripheral spheres share the remaining mass budget evenly."""
    central_mass = sphere_mass(central_radius, density)
    remaining = total_mass - central_mass
    if remaining < 0.0:
        msg = (
            f"Central sphere alone weighs {central_mass:.6g} kg, "
            f"more than the {total_mass:.6g} kg budget"
        )
        raise ValueError(msg)
    skeleton = build_body(design, 1.0, 0.0, Kind.MASS)
    return attach_spheres(
        skeleton,
        central_radius,
        remaining / len(design.points),
        central_mass=central_mass,
        density=density,
        total_mass=total_mass,
    )


@dataclass(frozen=True)
class CompositeSpec:
    """Parameters of a sphere composite: central radius, total mass budget, material density."""

    central_radius: float
    total_mass: float
    density: float = DIAMOND_DENSITY

    def __post_init__(self) -> None:
        for name in ("central_radius", "total_mass", "density"):
            if not getattr(self, name) > 0.0:
                msg = f"{name} must be > 0, got {getattr(self, name)}"
                raise ValueError(msg)
        central_mass = sphere_mass(self.central_radius, self.density)
        if central_mass > self.total_mass:
            msg = (
                f"Central sphere alone weighs {central_mass:.6g} kg, "
                f"more than the {self.total_mass:.6g} kg budget"
            )
            raise ValueError(msg)

    def build(self, design: TDesign) -> RigidBody:
        return composite_body(design, self.central_radius, self.total_mass, self.density)


def check_separated(a: RigidBody, b: RigidBody) -> None:
    """Raise ``OverlapError`` if elements coincide or spheres of a and b overlap."""
    if a.n_elements and b.n_elements:
        diff = a.positions[:, None, :] - b.positions[None, :, :]
        if np.any(np.linalg.norm(diff, axis=2) == 0.0):
            msg = "Bodies have coincident elements"
            raise OverlapError(msg)
    for sa in a.spheres:
        for sb in b.spheres:
            gap = float(np.linalg.norm(sa.center - sb.center)) - (sa.radius + sb.radius)
            if gap < 0.0:
                msg = f"Spheres overlap by {-gap:.3g} m"
                raise OverlapError(msg)


@dataclass(frozen=True)
class OrientationPair:
    """The two orientation branches |R1> + |R2> of a body in superposition."""

    r1: Rotation
    r2: Rotation

    def swapped(self) -> OrientationPair:
        return OrientationPair(self.r2, self.r1)

    def __iter__(self) -> Iterator[Rotation]:
        return iter((self.r1, self.r2))
