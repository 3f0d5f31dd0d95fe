"""Run configuration: a flat ``key = value`` file with optional section headers.

Sections (``[material]``, ``[scenario]``, ``[output]``) are cosmetic: every
key is unique across the file. ``#`` starts a comment. Angles are given in
degrees. Omitted keys take the Mn:GaAs defaults.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, field

from .units import MaterialParams

FIELD_CAP = 1e9  # V/m, sanity limit on any configured field


class ConfigError(ValueError):
    pass


@dataclass
class Scenario:
    theta_deg: float = 0.0
    theta_min_deg: float = -180.0
    theta_max_deg: float = 180.0
    e_dc: float = 1.0e7
    e_ac: float = 2.5e6
    drive_direction: str = "along_110"
    omega: float | None = None  # rad/s; None = resonant
    drive_phase_deg: float = 0.0
    detuning_formula: str = "corrected"
    duration: float = 2.0e-10
    dt: float | None = None
    trace_stride: int = 10
    pulse: str = "pi"
    temperature: float = 0.5
    background_fraction: float = 0.1
    degeneracy_tol: float = 1e-9
    d_min: float = 1.2e-9
    d_max: float = 2.0e-8
    j0: float = 0.1
    d0: float = 1.2e-9
    decay_length: float = 1.3e-9


@dataclass
class RunConfig:
    material: MaterialParams = field(default_factory=MaterialParams)
    scenario: Scenario = field(default_factory=Scenario)
    output_path: str | None = None
    grid_points: int = 721


MATERIAL_KEYS = [f.name for f in dataclasses.fields(MaterialParams)]
SCENARIO_KEYS = [f.name for f in dataclasses.fields(Scenario)]
OUTPUT_KEYS = ["output_path", "grid_points"]
VALID_KEYS = MATERIAL_KEYS + SCENARIO_KEYS + OUTPUT_KEYS

_STRING_KEYS = {"drive_direction", "detuning_formula", "pulse", "output_path"}
_AUTO_KEYS = {"omega", "dt"}
_INT_KEYS = {"grid_points", "trace_stride"}
_CHOICES = {
    "drive_direction": {"along_110", "along_001"},
    "detuning_formula": {"corrected", "printed"},
}
# key -> (lower, upper); "(" / "[" mark exclusive / inclusive ends
_BOUNDS = {
    "gamma_dipole": "(0,",
    "g_factor": "(0,",
    "hole_radius": "(0,",
    "e_dc": f"(0,{FIELD_CAP}]",
    "e_ac": f"[0,{FIELD_CAP}]",
    "omega": "(0,",
    "duration": "(0,",
    "dt": "(0,",
    "trace_stride": "[1,",
    "temperature": "(0,",
    "background_fraction": "[0,1)",
    "degeneracy_tol": "(0,",
    "d_min": "(0,",
    "d_max": "(0,",
    "j0": "(0,",
    "d0": "(0,",
    "decay_length": "(0,",
    "grid_points": "[2,",
}


def _check_bounds(key: str, value: float) -> None:
    spec = _BOUNDS.get(key)
    if spec is None:
        return
    lo_s, hi_s = spec[1:].rstrip(")]").split(",")
    lo = float(lo_s)
    ok = value >= lo if spec[0] == "[" else value > lo
    if hi_s:
        hi = float(hi_s)
        ok = ok and (value <= hi if spec.endswith("]") else value < hi)
    if not ok:
        shown = spec if hi_s else spec + "inf)"
        raise ConfigError(f"{key} = {value!r} is out of range {shown}")


def _convert(key: str, raw: str):
    raw = raw.strip()
    if key in _AUTO_KEYS and raw.lower() == "auto":
        return None
    if key in _STRING_KEYS:
        if key in _CHOICES and raw not in _CHOICES[key]:
            raise ConfigError(f"{key}: expected one of {sorted(_CHOICES[key])}, got {raw!r}")
        return raw
    try:
        value = int(raw) if key in _INT_KEYS else float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as a number") from None
    _check_bounds(key, value)
    return value


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",),
        interpolation=None, strict=True,
    )
    parser.optionxform = str
    try:
        parser.read_string("[__top__]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}".replace("\n", " ")) from None

    values = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key not in VALID_KEYS:
                raise ConfigError(f"unknown key {key!r}; valid keys: {', '.join(VALID_KEYS)}")
            if key in values:
                raise ConfigError(f"duplicate key {key!r}")
            values[key] = _convert(key, raw)

    material = MaterialParams(**{k: values[k] for k in MATERIAL_KEYS if k in values})
    scenario = Scenario(**{k: values[k] for k in SCENARIO_KEYS if k in values})
    if scenario.d_max <= scenario.d_min:
        raise ConfigError("d_max must exceed d_min")
    if scenario.theta_max_deg <= scenario.theta_min_deg:
        raise ConfigError("theta_max_deg must exceed theta_min_deg")
    return RunConfig(
        material=material,
        scenario=scenario,
        output_path=values.get("output_path"),
        grid_points=values.get("grid_points", 721),
    )
