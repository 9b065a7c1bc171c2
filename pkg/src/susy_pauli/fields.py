"""Axially symmetric electromagnetic field profiles.

The vector potential is ``A = a(t) z / 2`` with ``a = D + iB`` (complex
notation, ``A = A_x + i A_y``).  ``B`` is a uniform magnetic field along z,
``D`` drives the isotropic oscillator part.  The electric field follows from
``E = -dA/dt``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

KINDS = ("constant", "linear_D", "sinusoidal", "tabulated")


class FieldDomainError(ValueError):
    """Raised when a profile is evaluated outside its domain."""


@dataclass(frozen=True)
class PhysicalConfig:
    """Physical constants, units hbar = 2m = 1.

    ``e`` is the signed charge; it enters only through ``pi = p - eA``.
    """

    e: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.e) or self.e == 0:
            raise ValueError(f"charge e must be finite and nonzero, got {self.e}")


@dataclass(frozen=True)
class FieldSample:
    t: float
    B: float
    D: float
    D_dot: float
    B_dot: float
    a: complex
    E_x: float = 0.0
    E_y: float = 0.0


def fd_weights(x0: float, nodes: np.ndarray, order: int = 1) -> np.ndarray:
    """Fornberg finite-difference weights for derivative ``order`` at ``x0``."""
    n = len(nodes)
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = nodes[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def nodal_derivative(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Five-point derivative at table nodes: centered inside, one-sided at ends."""
    n = len(t)
    width = min(5, n)
    out = np.empty(n)
    for i in range(n):
        lo = min(max(i - width // 2, 0), n - width)
        idx = slice(lo, lo + width)
        out[i] = fd_weights(t[i], t[idx]) @ y[idx]
    return out


@dataclass(frozen=True)
class FieldProfile:
    """B(t), D(t) for one of the supported kinds.

    Build with the classmethod constructors rather than directly.
    """

    kind: str
    params: tuple = ()
    table: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "tabulated":
            t, B, D = (np.asarray(c, dtype=float) for c in self.table)
            if len(t) < 2 or np.any(np.diff(t) <= 0):
                raise ValueError("tabulated profile needs at least two strictly increasing times")
            if not (len(t) == len(B) == len(D)):
                raise ValueError("tabulated columns t, B, D differ in length")
            splines = (
                CubicSpline(t, B),
                CubicSpline(t, D),
                CubicSpline(t, nodal_derivative(t, B)),
                CubicSpline(t, nodal_derivative(t, D)),
            )
            object.__setattr__(self, "_splines", splines)

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, B0: float, D0: float = 0.0) -> FieldProfile:
        return cls("constant", (float(B0), float(D0)))

    @classmethod
    def linear_D(cls, B0: float, D_rate: float) -> FieldProfile:
        return cls("linear_D", (float(B0), float(D_rate)))

    @classmethod
    def sinusoidal(
        cls, B_mean: float, B_amp: float, omega_drive: float, D_mean: float = 0.0, D_amp: float = 0.0
    ) -> FieldProfile:
        return cls("sinusoidal", tuple(float(v) for v in (B_mean, B_amp, omega_drive, D_mean, D_amp)))

    @classmethod
    def tabulated(cls, t, B, D) -> FieldProfile:
        return cls("tabulated", table=tuple(tuple(map(float, c)) for c in (t, B, D)))

    @classmethod
    def from_csv(cls, path) -> FieldProfile:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [h.strip() for h in reader.fieldnames] != ["t", "B", "D"]:
                raise ValueError(f"{path}: expected header 't,B,D', got {reader.fieldnames}")
            rows = [(float(r["t"]), float(r["B"]), float(r["D"])) for r in reader]
        return cls.tabulated(*zip(*rows))

    def to_csv(self, path, t=None) -> None:
        """Write ``t,B,D`` rows; analytic kinds need sample times ``t``."""
        if t is None:
            if self.kind != "tabulated":
                raise ValueError("sample times are required for analytic profiles")
            t = self.table[0]
        t = np.asarray(t, dtype=float)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "B", "D"])
            for ti, b, d in zip(t, self.B(t), self.D(t)):
                w.writerow([repr(float(ti)), repr(float(b)), repr(float(d))])

    # evaluation ---------------------------------------------------------
    @property
    def domain(self) -> tuple[float, float]:
        if self.kind == "tabulated":
            return self.table[0][0], self.table[0][-1]
        return -np.inf, np.inf

    def _check(self, t):
        lo, hi = self.domain
        t = np.asarray(t, dtype=float)
        if np.any(t < lo) or np.any(t > hi):
            raise FieldDomainError(f"t={t} outside tabulated range [{lo}, {hi}]")
        return t

    def B(self, t):
        t = self._check(t)
        if self.kind in ("constant", "linear_D"):
            return np.full_like(t, self.params[0])
        if self.kind == "sinusoidal":
            Bm, Ba, w, _, _ = self.params
            return Bm + Ba * np.sin(w * t)
        return self._splines[0](t)

    def D(self, t):
        t = self._check(t)
        if self.kind == "constant":
            return np.full_like(t, self.params[1])
        if self.kind == "linear_D":
            return self.params[1] * t
        if self.kind == "sinusoidal":
            _, _, w, Dm, Da = self.params
            return Dm + Da * np.sin(w * t)
        return self._splines[1](t)

    def dB(self, t):
        t = self._check(t)
        if self.kind in ("constant", "linear_D"):
            return np.zeros_like(t)
        if self.kind == "sinusoidal":
            _, Ba, w, _, _ = self.params
            return Ba * w * np.cos(w * t)
        return self._splines[2](t)

    def dD(self, t):
        t = self._check(t)
        if self.kind == "constant":
            return np.zeros_like(t)
        if self.kind == "linear_D":
            return np.full_like(t, self.params[1])
        if self.kind == "sinusoidal":
            _, _, w, _, Da = self.params
            return Da * w * np.cos(w * t)
        return self._splines[3](t)

    @property
    def is_static_B(self) -> bool:
        return self.kind in ("constant", "linear_D")


def sample(profile: FieldProfile, cfg: PhysicalConfig, t: float, probe: tuple[float, float] | None = None) -> FieldSample:
    """Evaluate B, D, their rates, ``a = D + iB`` and optionally E at a probe point."""
    B = float(profile.B(t))
    D = float(profile.D(t))
    dB = float(profile.dB(t))
    dD = float(profile.dD(t))
    Ex = Ey = 0.0
    if probe is not None:
        x, y = probe
        Ex = 0.5 * dB * y - 0.5 * dD * x
        Ey = -0.5 * dB * x - 0.5 * dD * y
    return FieldSample(t=float(t), B=B, D=D, D_dot=dD, B_dot=dB, a=complex(D, B), E_x=Ex, E_y=Ey)


def vector_potential(profile: FieldProfile, cfg: PhysicalConfig, t: float, z):
    """Complex vector potential ``A_x + i A_y = a(t) z / 2``."""
    a = complex(float(profile.D(t)), float(profile.B(t)))
    return 0.5 * a * np.asarray(z, dtype=complex) if np.ndim(z) else 0.5 * a * complex(z)

