"""Run configuration: INI-style file with per-model sections, overridden by CLI flags.

Example::

    [run]
    model = morse
    out = results

    [harmonic]
    omega = 1.0
    z_re = 0.7
    z_im = 0.3

    [morse]
    v0 = 8.5078125
    beta = 0.5
    z_re = 0.4
    z_im = 0.2

    [limits]
    m_max = 8

    [tolerances]
    morse.orthonormality = 1e-8

    [truncations]
    kernel_terms = 300
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .morse import params_from_depth

HARMONIC_Z = complex(0.7, 0.3)
MORSE_Z = complex(0.4, 0.2)
MORSE_BETA = 0.5
MORSE_V0 = params_from_depth(7.75, MORSE_BETA).V0

DEFAULT_TRUNCATIONS = {
    "coefficient_terms": 200,
    "coefficient_rows": 40,
    "series_terms": 150,
    "kernel_terms": 300,
    "glauber_terms": 400,
}


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass
class RunConfig:
    model: str = "harmonic"
    z: complex | None = None
    omega: float = 1.0
    V0: float = MORSE_V0
    beta: float = MORSE_BETA
    gamma: float | None = None
    m_max: int | None = None
    n_max: int | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    truncations: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_TRUNCATIONS))
    output_path: Path = Path("jmcs_out")

    def resolved_z(self) -> complex:
        if self.z is not None:
            return self.z
        return HARMONIC_Z if self.model == "harmonic" else MORSE_Z

    def validate(self) -> "RunConfig":
        if self.model not in ("harmonic", "morse"):
            raise ConfigError(f"unknown model {self.model!r}")
        if not self.omega > 0:
            raise ConfigError("omega must be positive")
        for name, val in self.tolerances.items():
            if not val > 0:
                raise ConfigError(f"tolerance {name} must be positive")
        for name, val in self.truncations.items():
            if val < 1:
                raise ConfigError(f"truncation {name} must be >= 1")
        for name in ("m_max", "n_max"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.model == "morse":
            from .morse import MorseGCSLabel, MorseParams

            try:
                params = MorseParams(self.V0, self.beta)
                label = MorseGCSLabel(self.resolved_z(), params)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            if self.gamma is not None and not 2.0 * self.gamma + 1.0 > 0:
                raise ConfigError("gamma must satisfy 2 gamma + 1 > 0")
            del label
        return self

    def tolerance(self, check_id: str, default: float) -> float:
        if check_id in self.tolerances:
            return self.tolerances[check_id]
        return self.tolerances.get("all", default)


def _float(section, key, current):
    return section.getfloat(key) if key in section else current


def load_config(path: str | Path | None, cfg: RunConfig | None = None) -> RunConfig:
    """Read an INI file into a RunConfig (missing keys keep their defaults)."""
    cfg = cfg or RunConfig()
    if path is None:
        return cfg
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        if parser.has_section("run"):
            run = parser["run"]
            cfg.model = run.get("model", cfg.model)
            if "out" in run:
                cfg.output_path = Path(run["out"])
        section = parser[cfg.model] if parser.has_section(cfg.model) else None
        if section is not None:
            if "z_re" in section or "z_im" in section:
                base = cfg.resolved_z()
                cfg.z = complex(_float(section, "z_re", base.real), _float(section, "z_im", base.imag))
            cfg.omega = _float(section, "omega", cfg.omega)
            cfg.V0 = _float(section, "v0", cfg.V0)
            cfg.beta = _float(section, "beta", cfg.beta)
            if "gamma" in section:
                cfg.gamma = section.getfloat("gamma")
        if parser.has_section("limits"):
            lim = parser["limits"]
            if "m_max" in lim:
                cfg.m_max = lim.getint("m_max")
            if "n_max" in lim:
                cfg.n_max = lim.getint("n_max")
        if parser.has_section("tolerances"):
            for key, val in parser["tolerances"].items():
                cfg.tolerances[key] = float(val)
        if parser.has_section("truncations"):
            for key, val in parser["truncations"].items():
                cfg.truncations[key] = int(val)
    except ValueError as exc:
        raise ConfigError(f"bad value in {path}: {exc}") from exc
    return cfg


def parse_assignment(text: str) -> tuple[str, float]:
    """Parse a ``name=value`` tolerance override."""
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise ConfigError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise ConfigError(f"bad number in {text!r}") from exc
