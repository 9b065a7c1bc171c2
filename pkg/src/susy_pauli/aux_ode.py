"""Auxiliary oscillator f'' = -((eB)^2 + e D') f and the derived time factors.

Every time-dependent coefficient of the supercharges is built from one complex
solution ``f`` of this equation, its derivative, and the cyclotron phase
``Omega(t) = e * int_0^t B``.  With the Wronskian
``W = f conj(f') - conj(f) f'`` scaled to ``-2i`` the ladder operators obey
``[b-, b+] = 1``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.integrate import quad, solve_ivp

from .fields import FieldProfile, PhysicalConfig

TARGET_W = -2j


class AuxSolverError(RuntimeError):
    pass


class WronskianError(ValueError):
    """The solution cannot be scaled to W = -2i."""


class SpanError(ValueError):
    pass


@dataclass(frozen=True)
class AuxSolution:
    """Trajectory of f, f' and Omega with a continuous evaluator.

    ``t``, ``f``, ``fdot``, ``omega`` hold the solver nodes; ``evaluate`` gives
    values anywhere inside ``span``.
    """

    profile: FieldProfile
    cfg: PhysicalConfig
    t: np.ndarray
    f: np.ndarray
    fdot: np.ndarray
    omega: np.ndarray
    span: tuple[float, float]
    _eval: Callable = field(repr=False, compare=False)

    @property
    def wronskian(self) -> np.ndarray:
        return self.f * np.conj(self.fdot) - np.conj(self.f) * self.fdot

    @property
    def W(self) -> complex:
        """Wronskian at the first node."""
        return complex(self.wronskian[0])

    @property
    def is_normalized(self) -> bool:
        return abs(self.W - TARGET_W) <= 1e-9

    def evaluate(self, t):
        """Return ``(f, fdot, Omega)`` at time(s) ``t``."""
        t = np.asarray(t, dtype=float)
        lo, hi = self.span
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if np.any(t < lo - slack) or np.any(t > hi + slack):
            raise SpanError(f"t={t} outside solution span [{lo}, {hi}]")
        return self._eval(np.clip(t, lo, hi))

    def to_csv(self, path) -> None:
        W = self.wronskian
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "Re_f", "Im_f", "Re_fdot", "Im_fdot", "Omega", "Re_W", "Im_W"])
            for row in zip(self.t, self.f.real, self.f.imag, self.fdot.real, self.fdot.imag, self.omega, W.real, W.imag):
                w.writerow([repr(float(v)) for v in row])


@dataclass(frozen=True)
class TimeContext:
    """All time-dependent scalars needed to apply operators at one instant.

    ``f``-dependent entries are ``None`` for a field-only context, which is
    enough for the stationary-form operators (pi, Q, H, L_z, S_z).
    """

    t: float
    e: float
    B: float
    D: float
    D_dot: float
    a: complex
    omega: float
    profile: FieldProfile | None = None
    f: complex | None = None
    f_dot: complex | None = None
    W: complex | None = None

    @property
    def has_aux(self) -> bool:
        return self.f is not None

    @property
    def f1(self) -> complex:
        return self.f * np.exp(1j * self.omega)

    @property
    def f2_a_star(self) -> complex:
        """The product f2 * conj(a)."""
        return (self.e * self.D * self.f + self.f_dot) * np.exp(1j * self.omega) / self.e


def _omega_offset(profile: FieldProfile, cfg: PhysicalConfig, t0: float) -> float:
    lo, hi = profile.domain
    if t0 == 0.0 or not (lo <= min(0.0, t0) and max(0.0, t0) <= hi):
        return 0.0
    val, _ = quad(lambda s: float(profile.B(s)), 0.0, t0, epsabs=1e-14, epsrel=1e-13, limit=200)
    return cfg.e * val


def solve(
    profile: FieldProfile,
    cfg: PhysicalConfig,
    t0: float,
    t1: float,
    f0: complex = 1.0,
    f0_dot: complex = 1j,
    tol: float = 1e-10,
) -> AuxSolution:
    """Integrate the auxiliary equation with an adaptive 4(5) Runge-Kutta pair.

    Omega is carried as an extra quadrature component.  The default initial
    data ``f = 1, f' = i`` already has ``W = -2i``.
    """
    if not t0 < t1:
        raise ValueError(f"need t0 < t1, got [{t0}, {t1}]")
    if f0 == 0 and f0_dot == 0:
        raise ValueError("initial data (f0, f0_dot) must not both vanish")
    lo, hi = profile.domain
    if t0 < lo or t1 > hi:
        raise SpanError(f"profile defined on [{lo}, {hi}], requested [{t0}, {t1}]")
    e = cfg.e

    def rhs(t, y):
        k2 = (e * profile.B(t)) ** 2 + e * profile.dD(t)
        return np.array([y[2], y[3], -k2 * y[0], -k2 * y[1], e * profile.B(t)])

    f0, f0_dot = complex(f0), complex(f0_dot)
    y0 = np.array([f0.real, f0.imag, f0_dot.real, f0_dot.imag, _omega_offset(profile, cfg, t0)])
    res = solve_ivp(rhs, (t0, t1), y0, method="RK45", rtol=tol, atol=tol, dense_output=True)
    if res.status != 0:
        raise AuxSolverError(f"auxiliary ODE failed on [{t0}, {t1}]: {res.message}")
    dense = res.sol

    def _eval(t):
        y = dense(t)
        return y[0] + 1j * y[1], y[2] + 1j * y[3], y[4]

    y = res.y
    return AuxSolution(
        profile=profile,
        cfg=cfg,
        t=res.t,
        f=y[0] + 1j * y[1],
        fdot=y[2] + 1j * y[3],
        omega=y[4],
        span=(float(t0), float(t1)),
        _eval=_eval,
    )


def constant_field_omega(cfg: PhysicalConfig, B: float, D_rate: float) -> complex:
    """omega = sqrt((eB)^2 + e D'); imaginary when the potential is repulsive."""
    w2 = (cfg.e * B) ** 2 + cfg.e * D_rate
    if w2 == 0:
        raise ValueError("degenerate constant field: (eB)^2 + eD' = 0 has no oscillatory solutions")
    return np.sqrt(complex(w2))


def analytic_constant(
    cfg: PhysicalConfig,
    B: float,
    D_rate: float,
    c1: complex,
    c2: complex,
    span: tuple[float, float] = (0.0, 10.0),
    n_nodes: int = 201,
) -> AuxSolution:
    """Closed-form solution f = c1 exp(-i w t) + c2 exp(i w t) for constant B and D = D_rate t."""
    if c1 == 0 and c2 == 0:
        raise ValueError("(c1, c2) must not both vanish")
    w = constant_field_omega(cfg, B, D_rate)
    c1, c2 = complex(c1), complex(c2)
    eB = cfg.e * B

    def _eval(t):
        t = np.asarray(t, dtype=float)
        em, ep = np.exp(-1j * w * t), np.exp(1j * w * t)
        return c1 * em + c2 * ep, -1j * w * (c1 * em - c2 * ep), eB * t

    nodes = np.linspace(span[0], span[1], n_nodes)
    f, fdot, om = _eval(nodes)
    return AuxSolution(
        profile=FieldProfile.linear_D(B, D_rate),
        cfg=cfg,
        t=nodes,
        f=f,
        fdot=fdot,
        omega=om,
        span=(float(span[0]), float(span[1])),
        _eval=_eval,
    )


def normalize_wronskian(sol: AuxSolution) -> AuxSolution:
    """Rescale f by a positive factor so that W = -2i.

    A positive-imaginary Wronskian belongs to the other branch; it is reported
    rather than silently conjugated.
    """
    W = sol.W
    scale_ref = abs(sol.f[0]) * abs(sol.fdot[0]) + abs(sol.f[0]) ** 2
    if abs(W) <= 1e-12 * max(scale_ref, 1e-300):
        raise WronskianError("W = 0: f is real up to a constant phase, so f and conj(f) are dependent")
    if W.imag > 0:
        raise WronskianError(
            f"W = {W:.6g} has positive imaginary part (wrong branch); "
            "use the conjugate initial data (conj(f0), conj(f0_dot)) instead"
        )
    k = np.sqrt(2.0 / abs(W))
    if abs(k - 1.0) < 1e-15:
        return sol
    inner = sol._eval

    def _eval(t):
        f, fd, om = inner(t)
        return k * f, k * fd, om

    return replace(sol, f=k * sol.f, fdot=k * sol.fdot, _eval=_eval)


def field_context(profile: FieldProfile, cfg: PhysicalConfig, t: float, omega: float = 0.0) -> TimeContext:
    """Context without an auxiliary solution; enough for pi, Q, H, L_z, S_z."""
    B, D = float(profile.B(t)), float(profile.D(t))
    return TimeContext(
        t=float(t), e=cfg.e, B=B, D=D, D_dot=float(profile.dD(t)), a=complex(D, B), omega=omega, profile=profile
    )


def context_at(sol: AuxSolution, t: float) -> TimeContext:
    f, fd, om = sol.evaluate(t)
    B, D = float(sol.profile.B(t)), float(sol.profile.D(t))
    return TimeContext(
        t=float(t),
        e=sol.cfg.e,
        B=B,
        D=D,
        D_dot=float(sol.profile.dD(t)),
        a=complex(D, B),
        omega=float(om),
        profile=sol.profile,
        f=complex(f),
        f_dot=complex(fd),
        W=sol.W,
    )


def f1_equation_residual(sol: AuxSolution, t=None) -> np.ndarray:
    """|d f1/dt + e conj(a) (f1 - f2)| at the nodes, written with f2 conj(a).

    Uses d f1/dt = (f' + i e B f) exp(i Omega), which follows from the
    definitions alone, so this residual is an exact identity up to rounding.
    """
    t = sol.t if t is None else np.asarray(t, dtype=float)
    f, fd, om = sol.evaluate(t)
    e = sol.cfg.e
    B, D = sol.profile.B(t), sol.profile.D(t)
    ph = np.exp(1j * om)
    f1 = f * ph
    f1_dot = (fd + 1j * e * B * f) * ph
    f2_as = (e * D * f + fd) * ph / e
    return np.abs(f1_dot + e * (D - 1j * B) * f1 - e * f2_as)


def wronskian_drift(sol: AuxSolution) -> float:
    W = sol.wronskian
    return float(np.max(np.abs(W - W[0])))
