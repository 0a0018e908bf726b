"""tdesign-rotors -- rigid bodies shaped as spherical t-designs.

A body whose point charges or masses sit on a spherical t-design has the
same energy in any orientation up to degree t of an external field's
multipole expansion. This package builds such bodies and measures what
that buys:

1. Designs (``designs``, ``solver``, ``design_factory``)
   Catalog designs for t = 1, 2, 3, 5, a numerical solver for the rest,
   harmonic-sum verification. Factory: ``get_design_source()``,
   ``load_design_safe()``, ``available_design_sources()``

2. Fields and phases (``fields``, ``phases``, ``optimize``)
   Exact and truncated potentials, relative phase rates between two
   orientations, signal/noise scaling studies over t.

3. Entanglement (``entangle``, ``spindfs``)
   Two-body entangling energy E_ent, phase-state concurrence, the
   electrostatic and gravitational case studies, spin decoherence-free
   subspaces.

Quick start:
    from tdesign_rotors import ELEMENTARY_CHARGE, build_body, catalog_design
    from tdesign_rotors import default_pair, phase_rate, point_source

    body = build_body(catalog_design(2), 2e-6, ELEMENTARY_CHARGE, "charge")
    src = point_source((0, 0, 2e-4), 1e3 * ELEMENTARY_CHARGE, "charge")
    rate = phase_rate(body, default_pair(body), src)   # rate.hz, rate.rad_s
"""

from tdesign_rotors.constants import (
    BOHR_MAGNETON,
    COULOMB_K,
    DIAMOND_DENSITY,
    ELEMENTARY_CHARGE,
    GRAVITATIONAL_G,
    HBAR,
)
from tdesign_rotors.errors import (
    ConfigError,
    KindMismatchError,
    OptimizationError,
    OverlapError,
    PointFileError,
    SolverError,
    UnknownDesignError,
)
from tdesign_rotors.geometry import (
    CompositeSpec,
    Kind,
    OrientationPair,
    RigidBody,
    Rotation,
    Sphere,
    attach_spheres,
    build_body,
    composite_body,
    random_rotation,
    rotate,
)
from tdesign_rotors.designs import (
    Provenance,
    TDesign,
    VerificationReport,
    catalog_design,
    frame_potential,
    monomial_sphere_average,
    verify_design,
)
from tdesign_rotors.solver import SolverOptions, solve_design
from tdesign_rotors.design_source import CatalogSource, DesignSource, FileSource, SolverSource
from tdesign_rotors.design_factory import (
    available_design_sources,
    get_design_source,
    load_design_safe,
)
from tdesign_rotors.fields import (
    MultipoleExpansion,
    SourceModel,
    degree_energy,
    eval_truncated,
    exact_potential,
    expand,
    interaction_energy,
    point_source,
    potential_energy,
)
from tdesign_rotors.optimize import OptimizerConfig, optimize_pair
from tdesign_rotors.phases import (
    PhaseRate,
    PhaseScenario,
    ScalingRow,
    default_pair,
    degree_rate,
    phase_rate,
    scaling_study,
    signal_noise,
)
from tdesign_rotors.entangle import (
    GravityParams,
    PairEnergies,
    ScenarioReport,
    TwoBodyState,
    concurrence,
    electrostatic_study,
    entangling_energy,
    evolve,
    gravitational_scenario,
    noise_deltas,
    pair_energies,
    wootters_concurrence,
)
from tdesign_rotors.spindfs import (
    FieldPolynomial,
    SpinConfiguration,
    dfs_check,
    random_polynomial,
    spin_energy,
)

__all__ = [
    # constants
    "BOHR_MAGNETON",
    "COULOMB_K",
    "DIAMOND_DENSITY",
    "ELEMENTARY_CHARGE",
    "GRAVITATIONAL_G",
    "HBAR",
    # errors
    "ConfigError",
    "KindMismatchError",
    "OptimizationError",
    "OverlapError",
    "PointFileError",
    "SolverError",
    "UnknownDesignError",
    # geometry
    "CompositeSpec",
    "Kind",
    "OrientationPair",
    "RigidBody",
    "Rotation",
    "Sphere",
    "attach_spheres",
    "build_body",
    "composite_body",
    "random_rotation",
    "rotate",
    # designs
    "Provenance",
    "TDesign",
    "VerificationReport",
    "catalog_design",
    "frame_potential",
    "monomial_sphere_average",
    "verify_design",
    "SolverOptions",
    "solve_design",
    # design sources
    "DesignSource",
    "CatalogSource",
    "SolverSource",
    "FileSource",
    "available_design_sources",
    "get_design_source",
    "load_design_safe",
    # fields
    "MultipoleExpansion",
    "SourceModel",
    "degree_energy",
    "eval_truncated",
    "exact_potential",
    "expand",
    "interaction_energy",
    "point_source",
    "potential_energy",
    # phases and optimization
    "OptimizerConfig",
    "optimize_pair",
    "PhaseRate",
    "PhaseScenario",
    "ScalingRow",
    "default_pair",
    "degree_rate",
    "phase_rate",
    "scaling_study",
    "signal_noise",
    # entanglement
    "GravityParams",
    "PairEnergies",
    "ScenarioReport",
    "TwoBodyState",
    "concurrence",
    "electrostatic_study",
    "entangling_energy",
    "evolve",
    "gravitational_scenario",
    "noise_deltas",
    "pair_energies",
    "wootters_concurrence",
    # spin DFS
    "FieldPolynomial",
    "SpinConfiguration",
    "dfs_check",
    "random_polynomial",
    "spin_energy",
]
