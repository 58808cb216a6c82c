"""INI-style run configuration with line-numbered errors.

::

    [lattice]
    omega1 = 1.0 0.0        # complex numbers are two reals
    omega3 = 0.0 1.0

    [family]
    family = four_end       # or two_end
    a = 0 0                 # optional explicit coefficients
    m = 1                   # two_end period index
    n = 0

    [solve]
    method = special        # special | general | two_end | none
    solve_b = false

    [sampling]
    resolution = 64
    copies = 3

    [output]
    directory = out

``#`` and ``;`` start comments.  Unknown sections or keys are errors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError


def _complex(text: str) -> complex:
    parts = text.split()
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError("expected one or two real numbers")


def _float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise ValueError("must be finite")
    return v


def _int(text: str) -> int:
    return int(text)


def _pos_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise ValueError("must be a positive integer")
    return v


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ValueError("expected true or false")


def _int_pair(text: str) -> tuple:
    parts = [int(p) for p in text.split()]
    if len(parts) not in (1, 2) or min(parts) <= 0:
        raise ValueError("expected one or two positive integers")
    return tuple(parts)


def _choice(*options):
    def conv(text: str) -> str:
        t = text.strip()
        if t not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return t
    return conv


def _str(text: str) -> str:
    if not text.strip():
        raise ValueError("empty value")
    return text.strip()


SCHEMA = {
    "lattice": {"omega1": _complex, "omega3": _complex},
    "family": {
        "family": _choice("four_end", "two_end"),
        "a": _complex, "b": _complex, "c": _complex, "d": _complex,
        "m": _int, "n": _int,
    },
    "solve": {
        "method": _choice("special", "general", "two_end", "none"),
        "solve_b": _bool,
        "max_iterations": _pos_int,
    },
    "sampling": {
        "resolution": _pos_int,
        "clip_radius": _float,
        "copies": _int_pair,
        "grid": _pos_int,
        "zero_resolution": _pos_int,
        "samples": _pos_int,
        "seed": _int,
        "eps": _float,
    },
    "output": {"directory": _str, "mesh": _str, "report": _str, "samples": _str},
}


@dataclass
class RunConfig:
    values: dict = field(default_factory=dict)  # (section, key) -> value
    lines: dict = field(default_factory=dict)  # (section, key) -> line number

    def get(self, section: str, key: str, default=None):
        return self.values.get((section, key), default)

    def has(self, section: str, key: str) -> bool:
        return (section, key) in self.values

    def require(self, section: str, key: str):
        if (section, key) not in self.values:
            raise ConfigError(f"missing required key [{section}] {key}")
        return self.values[(section, key)]

    def line_of(self, section: str, key: str):
        return self.lines.get((section, key))


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw
        for mark in ("#", ";"):
            if mark in line:
                line = line[: line.index(mark)]
        line = line.strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", lineno)
            section = line[1:-1].strip()
            if section not in SCHEMA:
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if section is None:
            raise ConfigError("key outside of any section", lineno)
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in SCHEMA[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]", lineno)
        if (section, key) in cfg.values:
            raise ConfigError(f"duplicate key {key!r} in [{section}]", lineno)
        try:
            cfg.values[(section, key)] = SCHEMA[section][key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", lineno) from None
        cfg.lines[(section, key)] = lineno
    return cfg


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text)


__all__ = ["RunConfig", "SCHEMA", "parse_config", "load_config"]
