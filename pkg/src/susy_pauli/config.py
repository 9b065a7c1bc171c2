"""Flat ``section.key = value`` run configuration with strict key checking.

Example::

    # comments start with '#'
    physical.e = 1.0
    profile.kind = sinusoidal
    profile.B_mean = 1.0
    grid.N = auto
    state.n = 1
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path


class ConfigError(ValueError):
    """Malformed, incomplete or unknown configuration input (exit code 2)."""


@dataclass
class PhysicalSection:
    e: float = 1.0


@dataclass
class ProfileSection:
    kind: str = "sinusoidal"
    B0: float = 1.0
    D0: float = 0.0
    D_rate: float = 0.0
    B_mean: float = 1.0
    B_amp: float = 0.5
    omega_drive: float = 1.0
    D_mean: float = 0.0
    D_amp: float = 0.0
    table: str = ""


@dataclass
class GridSection:
    N: str = "auto"
    L: str = "auto"


@dataclass
class TimeSection:
    t0: float = 0.0
    t1: float = 2.0
    dt: float = 1e-3
    t_eval: float = 1.0
    samples: int = 10
    stride: int = 10


@dataclass
class OdeSection:
    tol: float = 1e-12
    f0: str = "canonical"
    f0_dot: str = "canonical"


@dataclass
class StateSection:
    n: int = 1
    m: int = 0
    s: float = -0.5
    superposition: str = ""


@dataclass
class OutputSection:
    dir: str = "out"


SECTIONS = {
    "physical": PhysicalSection,
    "profile": ProfileSection,
    "grid": GridSection,
    "time": TimeSection,
    "ode": OdeSection,
    "state": StateSection,
    "output": OutputSection,
}


@dataclass
class RunConfig:
    physical: PhysicalSection = field(default_factory=PhysicalSection)
    profile: ProfileSection = field(default_factory=ProfileSection)
    grid: GridSection = field(default_factory=GridSection)
    time: TimeSection = field(default_factory=TimeSection)
    ode: OdeSection = field(default_factory=OdeSection)
    state: StateSection = field(default_factory=StateSection)
    output: OutputSection = field(default_factory=OutputSection)
    present: set[str] = field(default_factory=set)
    source: str = "<defaults>"

    def set(self, dotted: str, raw: str) -> None:
        section, _, key = dotted.strip().partition(".")
        if section not in SECTIONS:
            raise ConfigError(f"unknown section {section!r} in {dotted!r}; known: {', '.join(SECTIONS)}")
        obj = getattr(self, section)
        types = {f.name: f.type for f in dataclasses.fields(obj)}
        if key not in types:
            raise ConfigError(f"unknown key {dotted!r}; section [{section}] accepts: {', '.join(types)}")
        setattr(obj, key, _convert(dotted, raw.strip(), types[key]))
        self.present.add(section)

    def require(self, *sections: str) -> None:
        """Configs read from a file must spell out the sections a subcommand uses."""
        if self.source == "<defaults>":
            return
        missing = [s for s in sections if s not in self.present]
        if missing:
            raise ConfigError(f"{self.source}: missing section(s) {', '.join('[' + s + ']' for s in missing)}")

    def validate(self) -> None:
        if self.physical.e == 0:
            raise ConfigError("physical.e must be nonzero")
        if self.ode.tol <= 0:
            raise ConfigError("ode.tol must be positive")
        if self.time.dt <= 0 or self.time.t1 <= self.time.t0:
            raise ConfigError("need time.dt > 0 and time.t1 > time.t0")
        if self.time.samples < 1 or self.time.stride < 1:
            raise ConfigError("time.samples and time.stride must be >= 1")
        for key in ("N", "L"):
            v = getattr(self.grid, key)
            if v != "auto":
                try:
                    x = float(v)
                except ValueError:
                    raise ConfigError(f"grid.{key} must be a number or 'auto', got {v!r}") from None
                if x <= 0:
                    raise ConfigError(f"grid.{key} must be positive")
        if self.grid.N != "auto":
            N = int(float(self.grid.N))
            if N < 16 or N & (N - 1):
                raise ConfigError(f"grid.N must be a power of two >= 16, got {N}")
        if self.profile.kind == "tabulated":
            if not self.profile.table:
                raise ConfigError("profile.kind = tabulated needs profile.table")
            if not Path(self.profile.table).is_file():
                raise ConfigError(f"profile.table {self.profile.table!r} does not exist")


def _convert(name: str, raw: str, typ):
    typ = {"float": float, "int": int, "str": str}.get(typ, typ) if isinstance(typ, str) else typ
    try:
        if typ is int:
            v = float(raw)
            if v != int(v):
                raise ValueError
            return int(v)
        if typ is float:
            return float(raw)
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {raw!r} as {typ.__name__}") from None
    return raw


def parse_text(text: str, source: str = "<string>") -> RunConfig:
    cfg = RunConfig(source=source)
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value', got {line!r}")
        key, _, value = line.partition("=")
        try:
            cfg.set(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    return cfg


def load(path: str | Path | None, overrides: list[str] | None = None) -> RunConfig:
    if path is None:
        cfg = RunConfig()
    else:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file {str(p)!r} does not exist")
        cfg = parse_text(p.read_text(), str(p))
    for ov in overrides or []:
        if "=" not in ov:
            raise ConfigError(f"--set expects section.key=value, got {ov!r}")
        k, _, v = ov.partition("=")
        cfg.set(k, v)
    cfg.validate()
    return cfg


def parse_complex(raw: str) -> complex:
    try:
        return complex(raw.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ConfigError(f"cannot parse {raw!r} as a complex number") from None
