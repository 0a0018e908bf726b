"""CSV reports built as polars DataFrames.

Every cell is pre-rendered as text: floats with Python's shortest
round-trip repr, integers with ``str`` and missing values as null, which
``write_csv`` emits as an empty field. Files are written to a temp file in
the target directory and renamed into place.
"""

from __future__ import annotations

import logging
import os
import tempfile
from collections.abc import Iterable
from pathlib import Path
from typing import TYPE_CHECKING

import polars as pl

if TYPE_CHECKING:
    from tdesign_rotors.designs import VerificationReport
    from tdesign_rotors.entangle import ScenarioReport
    from tdesign_rotors.phases import ScalingRow
    from tdesign_rotors.spindfs import DFSReport

logger = logging.getLogger(__name__)

SCALING_COLUMNS = ["t", "n_points", "delta_signal_hz", "delta_noise_hz", "ratio", "e_ent_hz"]


def fmt_float(value: float | None) -> str | None:
    return None if value is None else repr(float(value))


def fmt_int(value: int | None) -> str | None:
    return None if value is None else str(int(value))


def _frame(columns: list[str], rows: Iterable[list[str | None]]) -> pl.DataFrame:
    data = list(rows)
    return pl.DataFrame(data, schema={c: pl.Utf8 for c in columns}, orient="row")


def verification_frame(report: VerificationReport) -> pl.DataFrame:
    return _frame(["l", "residual"], ([fmt_int(l), fmt_float(r)] for l, r in report.rows()))


def scaling_frame(rows: Iterable[ScalingRow]) -> pl.DataFrame:
    return _frame(
        SCALING_COLUMNS,
        (
            [
                fmt_int(r.t),
                fmt_int(r.n_points),
                fmt_float(r.delta_signal),
                fmt_float(r.delta_noise),
                fmt_float(r.ratio),
                fmt_float(r.e_ent),
            ]
            for r in rows
        ),
    )


def dfs_frame(report: DFSReport) -> pl.DataFrame:
    return _frame(
        ["degree", "max_phase_rate"],
        ([fmt_int(r.degree), fmt_float(r.max_phase_rate)] for r in report.rows),
    )


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write ``text`` to a sibling temp file, then rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def write_csv(frame: pl.DataFrame, path: str | Path) -> Path:
    out = atomic_write_text(path, frame.write_csv(line_terminator="\n"))
    logger.info("Wrote %d rows to %s", frame.height, out)
    return out


def scenario_summary(reports: Iterable[ScenarioReport]) -> str:
    """Human-readable lines for scenario reports."""
    lines = []
    for r in reports:
        lines.append(
            f"t={r.t} N={r.n_points}: E_ent = {r.e_ent_hz:.6g} Hz, "
            f"noise = {r.delta_noise_hz:.6g} Hz"
            + ("" if r.delta_signal_hz is None else f", signal = {r.delta_signal_hz:.6g} Hz")
        )
        lines.append(
            f"  T = {r.time_s:g} s: entangling phase {r.entangling_phase:.6g} rad, "
            f"noise phase {r.noise_phase:.6g} rad, concurrence {r.concurrence:.6g}, "
            f"robust = {'yes' if r.robust else 'no'}"
        )
    return "\n".join(lines) + "\n"
