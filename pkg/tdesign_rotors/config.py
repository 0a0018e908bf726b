"""Scenario configuration from TOML.

Example (``scenarios/charged.toml``)::

    [design]
    source = "catalog"
    t_list = [1, 2, 3, 5]

    [body]
    radius_m = 2e-6
    unit_weight = 1.602176634e-19
    kind = "charge"

    [signal]
    positions_m = [[0.0, 0.0, 1e-5]]
    strengths = [1.602176634e-19]

    [noise]
    positions_m = [[0.0, 0.0, -2e-4]]
    strengths = [1.602176634e-16]

Parsing is strict: unknown sections or keys, missing required keys and
wrong types are all collected and raised together as one ``ConfigError``.
A ``[composite]`` table (``central_radius_m``, ``total_mass_kg``,
``density_kg_m3``) builds mass bodies as sphere composites instead of point
masses on a sphere of ``body.radius_m``.
Units are SI. ``TDESIGN_ROTORS_OUTPUT_DIR`` overrides ``output.dir``.
"""

from __future__ import annotations

import dataclasses
import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from tdesign_rotors.constants import DIAMOND_DENSITY
from tdesign_rotors.design_factory import get_design_source, load_design_safe
from tdesign_rotors.designs import TDesign
from tdesign_rotors.errors import ConfigError
from tdesign_rotors.fields import SourceModel
from tdesign_rotors.geometry import CompositeSpec, Kind
from tdesign_rotors.optimize import OptimizerConfig
from tdesign_rotors.phases import NoisePair, PhaseScenario

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "TDESIGN_ROTORS_OUTPUT_DIR"

_FLOAT = "float"
_INT = "int"
_BOOL = "bool"
_STR = "str"
_INT_LIST = "int list"
_VEC3 = "3-vector"
_VEC3_LIST = "list of 3-vectors"
_FLOAT_LIST = "float list"

_REQUIRED = object()

# section -> key -> (type, default or _REQUIRED)
_SCHEMA: dict[str, dict[str, tuple[str, Any]]] = {
    "design": {
        "source": (_STR, "auto"),
        "t_list": (_INT_LIST, _REQUIRED),
        "n": (_INT, None),
        "seed": (_INT, 0),
        "sweep": (_INT, 3),
        "restarts": (_INT, 32),
        "path": (_STR, None),
    },
    "body": {
        # required unless [composite] is given
        "radius_m": (_FLOAT, None),
        "unit_weight": (_FLOAT, None),
        "kind": (_STR, _REQUIRED),
    },
    "composite": {
        "central_radius_m": (_FLOAT, _REQUIRED),
        "total_mass_kg": (_FLOAT, _REQUIRED),
        "density_kg_m3": (_FLOAT, DIAMOND_DENSITY),
    },
    "signal": {
        "positions_m": (_VEC3_LIST, _REQUIRED),
        "strengths": (_FLOAT_LIST, _REQUIRED),
    },
    "noise": {
        "positions_m": (_VEC3_LIST, _REQUIRED),
        "strengths": (_FLOAT_LIST, _REQUIRED),
    },
    "entangle": {
        "separation_m": (_VEC3, [0.0, 0.0, 1e-5]),
        "time_s": (_FLOAT, 1.0),
    },
    "optimizer": {
        "restarts": (_INT, 32),
        "seed": (_INT, 0),
        "max_iters": (_INT, 2000),
        "xtol": (_FLOAT, 1e-10),
        "ftol": (_FLOAT, 1e-12),
    },
    "study": {
        "optimize": (_BOOL, True),
        "noise_pair": (_STR, "signal"),
    },
    "output": {
        "dir": (_STR, "."),
        "csv": (_STR, "report.csv"),
        "svg": (_STR, None),
        "summary": (_STR, None),
    },
}

_REQUIRED_SECTIONS = ("design", "body", "signal", "noise")


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check_type(kind: str, v: Any) -> bool:
    if kind == _FLOAT:
        return _is_number(v)
    if kind == _INT:
        return isinstance(v, int) and not isinstance(v, bool)
    if kind == _BOOL:
        return isinstance(v, bool)
    if kind == _STR:
        return isinstance(v, str)
    if kind == _INT_LIST:
        return isinstance(v, list) and all(_check_type(_INT, x) for x in v)
    if kind == _FLOAT_LIST:
        return isinstance(v, list) and all(_is_number(x) for x in v)
    if kind == _VEC3:
        return isinstance(v, list) and len(v) == 3 and all(_is_number(x) for x in v)
    if kind == _VEC3_LIST:
        return isinstance(v, list) and all(_check_type(_VEC3, x) for x in v)
    msg = f"unknown schema type {kind}"
    raise AssertionError(msg)


def _validate(raw: dict[str, Any]) -> dict[str, dict[str, Any]]:
    """Apply the schema; every problem is reported at once."""
    problems: list[str] = []
    keys: list[str] = []
    out: dict[str, dict[str, Any]] = {}

    for section in raw:
        if section not in _SCHEMA:
            problems.append(f"unknown section [{section}]")
            keys.append(section)
        elif not isinstance(raw[section], dict):
            problems.append(f"[{section}] must be a table")
            keys.append(section)
    for section in _REQUIRED_SECTIONS:
        if section not in raw:
            problems.append(f"missing section [{section}]")
            keys.append(section)

    for section, spec in _SCHEMA.items():
        table = raw.get(section, {})
        if not isinstance(table, dict):
            continue
        values: dict[str, Any] = {}
        for key in table:
            if key not in spec:
                problems.append(f"unknown key {section}.{key}")
                keys.append(f"{section}.{key}")
        for key, (kind, default) in spec.items():
            dotted = f"{section}.{key}"
            if key not in table:
                if default is _REQUIRED and section in raw:
                    problems.append(f"missing key {dotted}")
                    keys.append(dotted)
                values[key] = None if default is _REQUIRED else default
            elif not _check_type(kind, table[key]):
                problems.append(f"{dotted} must be a {kind}, got {table[key]!r}")
                keys.append(dotted)
            else:
                values[key] = table[key]
        out[section] = values

    if problems:
        msg = "Invalid scenario config: " + "; ".join(problems)
        raise ConfigError(msg, keys)
    return out


@dataclass(frozen=True)
class DesignConfig:
    source: str = "auto"
    t_list: tuple[int, ...] = ()
    n: int | None = None
    seed: int = 0
    sweep: int = 3
    restarts: int = 32
    path: Path | None = None

    def loader(self) -> Callable[[int], TDesign]:
        """t -> TDesign for the configured source; ``auto`` is catalog with solver fallback."""
        if self.source == "auto":
            return lambda t: load_design_safe(t, seed=self.seed, sweep=self.sweep)
        if self.source == "catalog":
            return get_design_source("catalog").load
        if self.source == "solver":
            src = get_design_source(
                "solver", n=self.n, seed=self.seed, restarts=self.restarts, sweep=self.sweep
            )
            return src.load
        return get_design_source("file", path=self.path).load


@dataclass(frozen=True)
class ScenarioConfig:
    design: DesignConfig
    radius: float
    unit_weight: float
    kind: Kind
    signal: SourceModel
    noise: SourceModel
    composite: CompositeSpec | None = None
    separation: tuple[float, float, float] = (0.0, 0.0, 1e-5)
    time_s: float = 1.0
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    optimize: bool = True
    noise_pair: NoisePair = NoisePair.SIGNAL
    output_dir: Path = Path(".")
    csv_name: str = "report.csv"
    svg_name: str | None = None
    summary_name: str | None = None

    def phase_scenario(self) -> PhaseScenario:
        return PhaseScenario(
            self.radius,
            self.unit_weight,
            self.kind,
            self.signal,
            self.noise,
            self.optimizer,
            self.noise_pair,
            self.design.loader(),
            composite=self.composite,
        )

    def with_seed(self, seed: int) -> ScenarioConfig:
        """Copy with both the design seed and the optimizer seed replaced."""
        return dataclasses.replace(
            self,
            design=dataclasses.replace(self.design, seed=seed),
            optimizer=dataclasses.replace(self.optimizer, seed=seed),
        )

    @property
    def csv_path(self) -> Path:
        return self.output_dir / self.csv_name

    @property
    def svg_path(self) -> Path | None:
        return None if self.svg_name is None else self.output_dir / self.svg_name

    @property
    def summary_path(self) -> Path | None:
        return None if self.summary_name is None else self.output_dir / self.summary_name


def _enum_value(enum_cls: type, value: str, dotted: str) -> Any:
    try:
        return enum_cls(value)
    except ValueError:
        allowed = [e.value for e in enum_cls]
        msg = f"{dotted} must be one of {allowed}, got {value!r}"
        raise ConfigError(msg, [dotted]) from None


def _source(section: dict[str, Any], kind: Kind, name: str) -> SourceModel:
    if len(section["positions_m"]) != len(section["strengths"]) or not section["strengths"]:
        msg = f"{name}.positions_m and {name}.strengths must be non-empty and of equal length"
        raise ConfigError(msg, [f"{name}.positions_m", f"{name}.strengths"])
    return SourceModel(kind, section["positions_m"], section["strengths"])


def _composite(section: dict[str, Any], kind: Kind) -> CompositeSpec:
    keys = [f"composite.{k}" for k in section]
    if kind is not Kind.MASS:
        msg = f"[composite] needs body.kind = 'mass', got {kind.value!r}"
        raise ConfigError(msg, ["composite", "body.kind"])
    try:
        return CompositeSpec(
            float(section["central_radius_m"]),
            float(section["total_mass_kg"]),
            float(section["density_kg_m3"]),
        )
    except ValueError as exc:
        msg = f"Invalid [composite]: {exc}"
        raise ConfigError(msg, keys) from exc


def parse_config(raw: dict[str, Any], base_dir: Path | None = None) -> ScenarioConfig:
    """Build a ``ScenarioConfig`` from an already-parsed TOML document."""
    v = _validate(raw)
    base_dir = base_dir or Path(".")

    d = v["design"]
    if d["source"] not in ("auto", "catalog", "solver", "file"):
        msg = f"design.source must be auto, catalog, solver or file, got {d['source']!r}"
        raise ConfigError(msg, ["design.source"])
    if d["source"] == "file" and d["path"] is None:
        msg = "design.path is required when design.source = 'file'"
        raise ConfigError(msg, ["design.path"])
    if not d["t_list"] or any(t < 1 for t in d["t_list"]):
        msg = f"design.t_list must be a non-empty list of orders >= 1, got {d['t_list']}"
        raise ConfigError(msg, ["design.t_list"])
    design = DesignConfig(
        source=d["source"],
        t_list=tuple(d["t_list"]),
        n=d["n"],
        seed=d["seed"],
        sweep=d["sweep"],
        restarts=d["restarts"],
        path=None if d["path"] is None else base_dir / d["path"],
    )

    body = v["body"]
    kind = _enum_value(Kind, body["kind"], "body.kind")
    composite = _composite(v["composite"], kind) if "composite" in raw else None
    if composite is None:
        missing = [f"body.{k}" for k in ("radius_m", "unit_weight") if body[k] is None]
        if missing:
            msg = "Invalid scenario config: " + "; ".join(f"missing key {k}" for k in missing)
            raise ConfigError(msg, missing)
        if not body["radius_m"] > 0.0:
            msg = f"body.radius_m must be > 0, got {body['radius_m']}"
            raise ConfigError(msg, ["body.radius_m"])
    elif body["radius_m"] is not None or body["unit_weight"] is not None:
        logger.warning("body.radius_m and body.unit_weight are unused for sphere composites")

    opt = v["optimizer"]
    try:
        optimizer = OptimizerConfig(**opt)
    except ValueError as exc:
        raise ConfigError(str(exc), [f"optimizer.{k}" for k in opt]) from exc

    ent = v["entangle"]
    if ent["time_s"] < 0.0:
        msg = f"entangle.time_s must be >= 0, got {ent['time_s']}"
        raise ConfigError(msg, ["entangle.time_s"])

    out = v["output"]
    output_dir = Path(os.environ.get(OUTPUT_DIR_ENV) or base_dir / out["dir"])

    return ScenarioConfig(
        design=design,
        radius=float(body["radius_m"] or 0.0),
        unit_weight=float(body["unit_weight"] or 0.0),
        kind=kind,
        composite=composite,
        signal=_source(v["signal"], kind, "signal"),
        noise=_source(v["noise"], kind, "noise"),
        separation=tuple(float(x) for x in ent["separation_m"]),
        time_s=float(ent["time_s"]),
        optimizer=optimizer,
        optimize=v["study"]["optimize"],
        noise_pair=_enum_value(NoisePair, v["study"]["noise_pair"], "study.noise_pair"),
        output_dir=output_dir,
        csv_name=out["csv"],
        svg_name=out["svg"],
        summary_name=out["summary"],
    )


def load_config(path: str | Path) -> ScenarioConfig:
    """Read and validate a TOML scenario file; relative paths resolve against its directory."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        msg = f"Cannot read config {path}: {exc}"
        raise ConfigError(msg) from exc
    except tomllib.TOMLDecodeError as exc:
        msg = f"Malformed TOML in {path}: {exc}"
        raise ConfigError(msg) from exc
    cfg = parse_config(raw, path.parent)
    logger.info("Loaded scenario %s (t = %s)", path, list(cfg.design.t_list))
    return cfg
