"""Physical constants (SI) and material defaults.

Single source of truth for every coupling constant used by the field,
phase and entanglement calculations. CODATA 2018 values.
"""

from __future__ import annotations

import math

# Coulomb constant 1/(4 pi eps0), N m^2 / C^2
COULOMB_K = 8.9875517923e9

# Newtonian constant of gravitation, N m^2 / kg^2
GRAVITATIONAL_G = 6.67430e-11

# Elementary charge, C
ELEMENTARY_CHARGE = 1.602176634e-19

# Reduced Planck constant, J s
HBAR = 1.054571817e-34

# Bohr magneton, J / T
BOHR_MAGNETON = 9.2740100783e-24

# Diamond, kg / m^3
DIAMOND_DENSITY = 3510.0

TWO_PI = 2.0 * math.pi

# Legendre recursion stays well conditioned up to this degree.
MAX_DEGREE = 32
