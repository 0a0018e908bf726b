"""Point-set text files.

One point per line, three whitespace-separated decimal coordinates.
Lines starting with ``#`` are comments; blank lines are skipped. Points
must lie on the unit sphere within 1e-9.

Files written here carry a comment header::

    # t = 3
    # n = 6
    # provenance = solved
    # residual = 1.2e-15

The header is informational; readers verify the points themselves.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import numpy.typing as npt

from tdesign_rotors.designs import SPHERE_TOL, TDesign
from tdesign_rotors.errors import PointFileError
from tdesign_rotors.reports import atomic_write_text

logger = logging.getLogger(__name__)


def parse_points(text: str, source: str = "<string>") -> npt.NDArray[np.float64]:
    """Parse point-file text into an (N, 3) array."""
    rows: list[tuple[float, float, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            msg = f"{source}:{lineno}: expected 3 coordinates, got {len(fields)}"
            raise PointFileError(msg, lineno)
        try:
            x, y, z = (float(f) for f in fields)
        except ValueError:
            msg = f"{source}:{lineno}: not a number in {line!r}"
            raise PointFileError(msg, lineno) from None
        if not all(np.isfinite((x, y, z))):
            msg = f"{source}:{lineno}: non-finite coordinate"
            raise PointFileError(msg, lineno)
        norm = float(np.sqrt(x * x + y * y + z * z))
        if abs(norm - 1.0) > SPHERE_TOL:
            msg = f"{source}:{lineno}: point is off the unit sphere (|P| = {norm!r})"
            raise PointFileError(msg, lineno)
        rows.append((x, y, z))
    if not rows:
        msg = f"{source}: no points"
        raise PointFileError(msg)
    return np.array(rows)


def read_points(path: str | Path) -> npt.NDArray[np.float64]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"Cannot read point file {path}: {exc}"
        raise PointFileError(msg) from exc
    points = parse_points(text, str(path))
    logger.info("Read %d points from %s", len(points), path)
    return points


def format_points(points: npt.ArrayLike, header: dict[str, object] | None = None) -> str:
    lines = [f"# {key} = {value}" for key, value in (header or {}).items()]
    lines += [" ".join(repr(float(c)) for c in p) for p in np.asarray(points, dtype=np.float64)]
    return "\n".join(lines) + "\n"


def write_design(path: str | Path, design: TDesign) -> Path:
    header = {
        "t": design.t,
        "n": design.n_points,
        "provenance": design.provenance.value,
        "residual": repr(design.residual),
    }
    out = atomic_write_text(path, format_points(design.points, header))
    logger.info("Wrote %d-point %d-design to %s", design.n_points, design.t, out)
    return out
