"""Real spherical and solid harmonics.

Orthonormal real harmonics on S^2 (no Condon-Shortley phase), evaluated with
the upward associated-Legendre recursion in cos(theta). Columns are laid out
flat, degree by degree: column ``l*l + l + m`` holds Y_lm for -l <= m <= l.

    m = 0 :  Y_l0 = P_l0(cos t)
    m > 0 :  Y_lm = sqrt(2) P_lm(cos t) cos(m phi)
    m < 0 :  Y_lm = sqrt(2) P_l|m|(cos t) sin(|m| phi)

where P_lm carries the full orthonormal normalization. With this basis the
addition theorem reads sum_m Y_lm(u) Y_lm(v) = (2l+1)/(4 pi) P_l(u . v).
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from tdesign_rotors.constants import MAX_DEGREE

FloatArray = npt.NDArray[np.float64]


def harmonic_index(l: int, m: int) -> int:
    """Flat column index of (l, m)."""
    return l * l + l + m


def n_harmonics(l_max: int) -> int:
    """Number of (l, m) columns for degrees 0..l_max."""
    return (l_max + 1) ** 2


def real_sph_harm(points: npt.ArrayLike, l_max: int) -> FloatArray:
    """Evaluate Y_lm at the directions of ``points`` for all l <= l_max.

    Points need not be unit length; only their direction is used. A zero
    vector is treated as the +z direction.

    Returns an array of shape (N, (l_max + 1)**2).
    """
    if l_max < 0 or l_max > MAX_DEGREE:
        msg = f"l_max must be in [0, {MAX_DEGREE}], got {l_max}"
        raise ValueError(msg)

    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    r = np.linalg.norm(pts, axis=1)
    unit = np.zeros_like(pts)
    nonzero = r > 0.0
    unit[nonzero] = pts[nonzero] / r[nonzero, None]
    unit[~nonzero] = (0.0, 0.0, 1.0)

    cos_t = np.clip(unit[:, 2], -1.0, 1.0)
    sin_t = np.hypot(unit[:, 0], unit[:, 1])
    phi = np.arctan2(unit[:, 1], unit[:, 0])

    out = np.zeros((pts.shape[0], n_harmonics(l_max)))
    p_mm = np.full(pts.shape[0], 1.0 / math.sqrt(4.0 * math.pi))

    for m in range(l_max + 1):
        if m > 0:
            p_mm = math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_t * p_mm
        if m == 0:
            cos_m = sin_m = None
        else:
            cos_m = math.sqrt(2.0) * np.cos(m * phi)
            sin_m = math.sqrt(2.0) * np.sin(m * phi)

        _store(out, m, m, p_mm, cos_m, sin_m)
        if m == l_max:
            break

        p_prev = p_mm
        p_cur = math.sqrt(2.0 * m + 3.0) * cos_t * p_mm
        _store(out, m + 1, m, p_cur, cos_m, sin_m)

        for l in range(m + 2, l_max + 1):
            a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            p_next = a * (cos_t * p_cur - b * p_prev)
            _store(out, l, m, p_next, cos_m, sin_m)
            p_prev, p_cur = p_cur, p_next

    return out


def _store(
    out: FloatArray,
    l: int,
    m: int,
    p_lm: FloatArray,
    cos_m: FloatArray | None,
    sin_m: FloatArray | None,
) -> None:
    if m == 0:
        out[:, harmonic_index(l, 0)] = p_lm
    else:
        out[:, harmonic_index(l, m)] = p_lm * cos_m
        out[:, harmonic_index(l, -m)] = p_lm * sin_m


def regular_solid_harmonics(points: npt.ArrayLike, l_max: int) -> FloatArray:
    """Regular solid harmonics R_lm(x) = |x|^l Y_lm(x / |x|).

    These are homogeneous harmonic polynomials of degree l, so they are
    well defined at the origin (only the l = 0 column is nonzero there).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    r = np.linalg.norm(pts, axis=1)
    harm = real_sph_harm(pts, l_max)
    degrees = np.repeat(np.arange(l_max + 1), 2 * np.arange(l_max + 1) + 1)
    return harm * r[:, None] ** degrees[None, :]


def degree_slices(l_max: int) -> list[slice]:
    """Column slice of each degree 0..l_max."""
    return [slice(l * l, (l + 1) * (l + 1)) for l in range(l_max + 1)]


def legendre_series(u: npt.ArrayLike, l_max: int) -> FloatArray:
    """Legendre polynomials P_0..P_l_max at ``u``; shape (l_max + 1, *u.shape)."""
    u = np.asarray(u, dtype=np.float64)
    out = np.empty((l_max + 1, *u.shape))
    out[0] = 1.0
    if l_max >= 1:
        out[1] = u
    for l in range(1, l_max):
        out[l + 1] = ((2 * l + 1) * u * out[l] - l * out[l - 1]) / (l + 1)
    return out
