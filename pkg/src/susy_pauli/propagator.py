"""Independent time stepping of i dpsi/dt = H(t) psi.

Classical RK4 with the matrix-free spectral H.  Nothing here uses the
auxiliary solution except the observables, so agreement with the generated
eigenstates is a genuine cross-check.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .aux_ode import AuxSolution, context_at, field_context
from .fields import FieldProfile, PhysicalConfig
from .grid import GridSpec, SpinorField, inner
from .operators import OperatorKind as K
from .operators import apply, pi_minus, pi_plus

OBSERVABLES = {
    "norm": None,
    "Htilde": K.HTilde,
    "Lz": K.Lz,
    "Sz": K.Sz,
    "Qp": K.QTildePlus,
    "Qm": K.QTildeMinus,
    "bpbm": None,
}
TRAJECTORY_HEADER = ["t", "norm", "Re_Htilde", "Re_Lz", "Re_Sz", "Re_Qp", "Im_Qp", "Re_Qm", "Im_Qm"]


class InstabilityError(RuntimeError):
    pass


class StepSizeError(ValueError):
    pass


def _h(up, dn, spec, ctx):
    return (
        pi_minus(pi_plus(up, spec, ctx), spec, ctx),
        pi_plus(pi_minus(dn, spec, ctx), spec, ctx),
    )


def stability_bound(spec: GridSpec, profile: FieldProfile, cfg: PhysicalConfig, t0: float, t1: float) -> float:
    """Largest RK4 step keeping dt * max|eigenvalue of H| inside the imaginary-axis limit 2 sqrt 2.

    The spectral radius of H is bounded by (|k|max + e|a|max L / (2 sqrt 2))^2 + |e| Bmax,
    the kinetic symbol at the grid corner plus the potential at the corner.
    """
    ts = np.linspace(t0, t1, 257)
    B, D = np.asarray(profile.B(ts)), np.asarray(profile.D(ts))
    amax = np.abs(D + 1j * B).max()
    kmax = math.sqrt(2) * spec.kmax
    lam = (kmax + abs(cfg.e) * amax * spec.L / (2 * math.sqrt(2))) ** 2 + abs(cfg.e) * np.abs(B).max()
    return 2 * math.sqrt(2) / lam


def step(psi: SpinorField, profile: FieldProfile, cfg: PhysicalConfig, t: float, dt: float) -> SpinorField:
    """One RK4 step from ``t`` to ``t + dt``."""
    spec = psi.spec
    ctxs = [field_context(profile, cfg, t + c * dt) for c in (0.0, 0.5, 1.0)]

    def rhs(u, d, ctx):
        hu, hd = _h(u, d, spec, ctx)
        return -1j * hu, -1j * hd

    u, d = psi.up, psi.down
    k1 = rhs(u, d, ctxs[0])
    k2 = rhs(u + 0.5 * dt * k1[0], d + 0.5 * dt * k1[1], ctxs[1])
    k3 = rhs(u + 0.5 * dt * k2[0], d + 0.5 * dt * k2[1], ctxs[1])
    k4 = rhs(u + dt * k3[0], d + dt * k3[1], ctxs[2])
    nu = u + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    nd = d + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    if not (np.isfinite(nu).all() and np.isfinite(nd).all()):
        raise InstabilityError(f"non-finite values after the step at t = {t:.6g} (dt = {dt:g})")
    return SpinorField(nu, nd, spec, t + dt)


def observe(psi: SpinorField, sol: AuxSolution, names) -> dict[str, complex]:
    ctx = context_at(sol, psi.t)
    nn = inner(psi, psi)
    out = {}
    for name in names:
        if name == "norm":
            out[name] = math.sqrt(nn.real)
        elif name == "bpbm":
            bm = apply(K.BMinus, psi, ctx)
            out[name] = inner(bm, bm) / nn
        else:
            out[name] = inner(psi, apply(OBSERVABLES[name], psi, ctx)) / nn
    return out


@dataclass
class PropagationRun:
    initial: SpinorField
    profile: FieldProfile
    sol: AuxSolution
    t1: float
    dt: float
    observables: tuple[str, ...] = ("norm", "Htilde", "Lz", "Sz", "Qp", "Qm", "bpbm")
    stride: int = 10
    check_stability: bool = True

    def __post_init__(self):
        if self.dt <= 0:
            raise StepSizeError("dt must be positive")
        if self.stride < 1:
            raise StepSizeError("stride must be >= 1")
        unknown = set(self.observables) - set(OBSERVABLES)
        if unknown:
            raise ValueError(f"unknown observables {sorted(unknown)}; choose from {sorted(OBSERVABLES)}")

    @property
    def t0(self) -> float:
        return self.initial.t

    @property
    def n_steps(self) -> int:
        n = round((self.t1 - self.t0) / self.dt)
        if n < 1 or abs(n * self.dt - (self.t1 - self.t0)) > 1e-9 * max(1.0, abs(self.t1)):
            raise StepSizeError(f"span [{self.t0}, {self.t1}] is not a whole number of steps dt = {self.dt}")
        return n


@dataclass
class RunReport:
    times: np.ndarray
    final: SpinorField
    series: dict[str, np.ndarray] = field(default_factory=dict)

    def drift(self, name: str) -> float:
        s = self.series[name]
        return float(np.abs(s - s[0]).max())

    @property
    def drifts(self) -> dict[str, float]:
        return {k: self.drift(k) for k in self.series}

    def to_csv(self, path) -> None:
        s = self.series
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(TRAJECTORY_HEADER)
            for i, t in enumerate(self.times):
                g = lambda k: s[k][i] if k in s else float("nan")
                w.writerow([repr(float(t)), repr(float(np.real(g("norm")))),
                            repr(float(np.real(g("Htilde")))), repr(float(np.real(g("Lz")))),
                            repr(float(np.real(g("Sz")))), repr(float(np.real(g("Qp")))),
                            repr(float(np.imag(g("Qp")))), repr(float(np.real(g("Qm")))),
                            repr(float(np.imag(g("Qm"))))])


def run(spec: PropagationRun) -> RunReport:
    cfg = spec.sol.cfg
    n = spec.n_steps
    if spec.check_stability:
        bound = stability_bound(spec.initial.spec, spec.profile, cfg, spec.t0, spec.t1)
        if spec.dt > 0.5 * bound:
            raise StepSizeError(f"dt = {spec.dt:g} exceeds half the stability bound {bound:.3g}")
    psi = spec.initial
    times, rows = [psi.t], [observe(psi, spec.sol, spec.observables)]
    for i in range(1, n + 1):
        psi = step(psi, spec.profile, cfg, spec.t0 + (i - 1) * spec.dt, spec.dt)
        if i % spec.stride == 0 or i == n:
            times.append(psi.t)
            rows.append(observe(psi, spec.sol, spec.observables))
    series = {k: np.array([r[k] for r in rows]) for k in spec.observables}
    return RunReport(np.array(times), psi, series)


def propagate(psi: SpinorField, profile: FieldProfile, cfg: PhysicalConfig, t1: float, dt: float) -> SpinorField:
    """Bare propagation without observables."""
    n = round((t1 - psi.t) / dt)
    t0 = psi.t
    for i in range(n):
        psi = step(psi, profile, cfg, t0 + i * dt, dt)
    return psi


def free_gaussian(spec: GridSpec, sigma: float, t: float) -> SpinorField:
    """Closed-form free evolution of exp(-r^2/(4 sigma^2)) under H = -laplacian (spin up)."""
    s = sigma**2 + 1j * t
    psi = (sigma**2 / s) * np.exp(-spec.R2 / (4 * s))
    return SpinorField(psi, np.zeros_like(psi), spec, t)
