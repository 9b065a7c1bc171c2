"""Exact solutions |n, m, s> of the time-dependent Pauli equation.

The ground states are annihilated by b-:

    |0,m,s> = C f^(m-1) exp(i(m+2s) Omega) chi_s z*^(-m) exp(i/4 (eD + f'/f) |z|^2),

and excited states follow from the raising operator,
``|n,m,s> = (b+)^n |0,m-n,s> / sqrt(n!)``.  With W = -2i the Gaussian decays
like exp(-|z|^2 / (4|f|^2)) and ``C = (pi 2^(|m|+1) |m|!)^(-1/2)`` normalizes
every state at every time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .aux_ode import AuxSolution, context_at, field_context
from .grid import GridSpec, SpinorField
from .operators import OperatorKind as K
from .operators import apply

BOUNDARY_TOL = 1e-13


class PoleError(ValueError):
    """The ladder base state would carry a pole at z = 0 (m - n > 0)."""


class BranchError(ValueError):
    """The auxiliary solution is not normalized to W = -2i."""


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m: int
    s: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n}")
        if int(self.m) != self.m:
            raise ValueError(f"m must be an integer, got {self.m}")
        if self.s not in (0.5, -0.5):
            raise ValueError(f"s must be +1/2 or -1/2, got {self.s}")
        if self.m - self.n > 0:
            raise PoleError(
                f"(n={self.n}, m={self.m}): base state |0, m-n={self.m - self.n}> needs m <= 0, "
                "otherwise z*^(-m) has a pole at z = 0"
            )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))

    @property
    def energy(self) -> float:
        """Eigenvalue of H~: n + s + 1/2."""
        return self.n + self.s + 0.5

    @property
    def degree(self) -> int:
        """Largest total degree in z, z* of the polynomial prefactor."""
        return 2 * self.n - self.m


def normalization_constant(m: int) -> float:
    k = abs(m)
    return (math.pi * 2 ** (k + 1) * math.factorial(k)) ** -0.5


def _require_normalized(sol: AuxSolution):
    if not sol.is_normalized:
        raise BranchError(f"auxiliary solution has W = {sol.W:.6g}; normalize it to W = -2i first")


def _spin_components(psi: np.ndarray, s: float):
    zero = np.zeros_like(psi)
    return (psi, zero) if s > 0 else (zero, psi)


def gaussian_exponent(ctx) -> complex:
    """alpha in exp(alpha |z|^2) for the ground states."""
    return 0.25j * (ctx.e * ctx.D + ctx.f_dot / ctx.f)


def prefactor(m: int, s: float, ctx, spin_phase: bool = True) -> complex:
    """C_s(t) = C f^(m-1) exp(i(m+2s) Omega); without ``spin_phase`` the 2s is dropped."""
    ph = m + (2 * s if spin_phase else 0.0)
    return normalization_constant(m) * ctx.f ** (m - 1) * np.exp(1j * ph * ctx.omega)


def ground_state(m: int, s: float, sol: AuxSolution, spec: GridSpec, t: float, spin_phase: bool = True) -> SpinorField:
    if m > 0:
        raise PoleError(f"m = {m} > 0: z*^(-m) has a pole at z = 0; ground states need m <= 0")
    if s not in (0.5, -0.5):
        raise ValueError(f"s must be +1/2 or -1/2, got {s}")
    _require_normalized(sol)
    ctx = context_at(sol, t)
    psi = prefactor(m, s, ctx, spin_phase) * spec.Zc ** (-m) * np.exp(gaussian_exponent(ctx) * spec.R2)
    up, dn = _spin_components(psi, s)
    return SpinorField(up, dn, spec, t)


def eigenstate(qn: QuantumNumbers, sol: AuxSolution, spec: GridSpec, t: float, spin_phase: bool = True) -> SpinorField:
    """Apply the grid raising operator n times to the base ground state."""
    psi = ground_state(qn.m - qn.n, qn.s, sol, spec, t, spin_phase)
    if qn.n == 0:
        return psi
    ctx = context_at(sol, t)
    for _ in range(qn.n):
        psi = apply(K.BPlus, psi, ctx)
    return psi * (1 / math.sqrt(math.factorial(qn.n)))


@dataclass(frozen=True)
class EigenState:
    """Generator of |n,m,s>(t) on a fixed grid."""

    qn: QuantumNumbers
    sol: AuxSolution
    spec: GridSpec
    spin_phase: bool = True

    @property
    def C(self) -> float:
        return normalization_constant(self.qn.m - self.qn.n)

    @property
    def energy(self) -> float:
        return self.qn.energy

    def __call__(self, t: float) -> SpinorField:
        return eigenstate(self.qn, self.sol, self.spec, t, self.spin_phase)


def pauli_residual(state: EigenState, t: float, dt: float = 1e-3) -> float:
    """||i dpsi/dt - H psi|| / ||psi|| with a centered five-point time derivative."""
    lo, hi = state.sol.span
    if t - 2 * dt < lo or t + 2 * dt > hi:
        raise ValueError(f"stencil [{t - 2 * dt}, {t + 2 * dt}] leaves solution span [{lo}, {hi}]")
    pm2, pm1, p0, pp1, pp2 = (state(t + k * dt) for k in (-2, -1, 0, 1, 2))
    dpsi = (pm2 - pp2 + (pp1 - pm1) * 8) * (1 / (12 * dt))
    ctx = field_context(state.sol.profile, state.sol.cfg, t)
    r = dpsi * 1j - apply(K.H, p0, ctx)
    return r.norm() / p0.norm()


def susy_partner_check(qn: QuantumNumbers, sol: AuxSolution, spec: GridSpec, t: float, spin_phase: bool = False) -> float:
    """Residual of the supercharge action on the basis.

    With ``spin_phase=False`` (instantaneous basis, spin-independent phase):

        Q~+|n,m,s> = delta(s,-1/2) exp(2i Omega) sqrt(n)   |n-1,m-1,+1/2>
        Q~-|n,m,s> = delta(s,+1/2) exp(-2i Omega) sqrt(n+1) |n+1,m+1,-1/2>

    With ``spin_phase=True`` the states are the Pauli solutions, whose spin
    phase absorbs exp(+-2i Omega); the relations then hold without it.
    Returns the larger of the two relative residuals.
    """
    ctx = context_at(sol, t)
    psi = eigenstate(qn, sol, spec, t, spin_phase)
    phase = 1.0 if spin_phase else np.exp(2j * ctx.omega)
    norm = psi.norm()

    qp = apply(K.QTildePlus, psi, ctx)
    if qn.s > 0 or qn.n == 0:
        r_plus = qp.norm() / norm
    else:
        target = eigenstate(QuantumNumbers(qn.n - 1, qn.m - 1, 0.5), sol, spec, t, spin_phase)
        r_plus = (qp - target * (phase * math.sqrt(qn.n))).norm() / norm

    qm = apply(K.QTildeMinus, psi, ctx)
    if qn.s < 0:
        r_minus = qm.norm() / norm
    else:
        target = eigenstate(QuantumNumbers(qn.n + 1, qn.m + 1, -0.5), sol, spec, t, spin_phase)
        r_minus = (qm - target * (math.sqrt(qn.n + 1) / phase)).norm() / norm
    return max(r_plus, r_minus)


# grid sizing ----------------------------------------------------------------

def envelope_radius(degree: int, tol: float = BOUNDARY_TOL) -> float:
    """rho with rho^d exp(-rho^2/4) = tol * peak, for the unit-width envelope."""
    log_peak = 0.0 if degree == 0 else 0.5 * degree * math.log(2 * degree) - 0.5 * degree
    g = lambda r: degree * math.log(r) - r * r / 4 - log_peak - math.log(tol)
    start = math.sqrt(2 * degree) if degree else 1e-9
    return brentq(g, max(start, 1e-9) + 1e-9, 200.0)


def recommended_grid(qn: QuantumNumbers, sol: AuxSolution, t_range: tuple[float, float] | None = None, min_N: int = 32) -> GridSpec:
    """Side length and resolution keeping |psi| < 1e-13 of its peak at the edges.

    L is the larger of the envelope estimate and 8 * 2 max|f| * sqrt(n+|m|+1);
    N is the smallest power of two resolving the chirped Gaussian spectrum.
    """
    lo, hi = t_range if t_range is not None else sol.span
    ts = np.union1d(np.linspace(lo, hi, 201), sol.t[(sol.t >= lo) & (sol.t <= hi)])
    f, fd, _ = sol.evaluate(ts)
    sig = np.abs(f)
    rho = envelope_radius(qn.degree)
    L = max(2 * rho * sig.max(), 16 * sig.max() * math.sqrt(qn.n + abs(qn.m) + 1))
    A = 1 / (4 * sig**2)
    beta = 0.25 * (sol.cfg.e * sol.profile.D(ts) + (fd / f).real)
    k_need = rho * np.sqrt((A**2 + beta**2) / A).max()
    N = min_N
    while np.pi * N / L < k_need:
        N *= 2
    return GridSpec(N, float(L))


# independent polynomial route -------------------------------------------------

class GaussianPolynomial:
    """sum c_jk z^j z*^k times exp(alpha |z|^2), with exact derivative rules."""

    def __init__(self, coeffs: dict[tuple[int, int], complex], alpha: complex):
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}
        self.alpha = alpha

    def _new(self, coeffs):
        return GaussianPolynomial(coeffs, self.alpha)

    def d_z(self):
        out: dict = {}
        for (j, k), c in self.coeffs.items():
            if j:
                out[(j - 1, k)] = out.get((j - 1, k), 0) + j * c
            out[(j, k + 1)] = out.get((j, k + 1), 0) + self.alpha * c
        return self._new(out)

    def d_zbar(self):
        out: dict = {}
        for (j, k), c in self.coeffs.items():
            if k:
                out[(j, k - 1)] = out.get((j, k - 1), 0) + k * c
            out[(j + 1, k)] = out.get((j + 1, k), 0) + self.alpha * c
        return self._new(out)

    def times(self, c: complex, a: int = 0, b: int = 0):
        return self._new({(j + a, k + b): c * v for (j, k), v in self.coeffs.items()})

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, 0) + v
        return self._new(out)

    def apply_terms(self, terms) -> GaussianPolynomial:
        """Apply spin-blind numeric terms (c, a, b, p, q) in normal order."""
        out = self._new({})
        for c, a, b, p, q in terms:
            g = self
            for _ in range(q):
                g = g.d_zbar()
            for _ in range(p):
                g = g.d_z()
            out = out + g.times(c, a, b)
        return out

    def on_grid(self, spec: GridSpec) -> np.ndarray:
        Z, Zc = spec.Z, spec.Zc
        poly = np.zeros_like(Z)
        for (j, k), c in self.coeffs.items():
            poly = poly + c * Z**j * Zc**k
        return poly * np.exp(self.alpha * spec.R2)


def symbol_values(ctx) -> dict[str, complex]:
    """Numeric values of the coefficient symbols at one instant."""
    f, fd = ctx.f, ctx.f_dot
    E1 = np.exp(1j * ctx.omega)
    return {
        "e": ctx.e, "B": ctx.B, "D": ctx.D, "D'": ctx.D_dot, "r2": 1 / math.sqrt(2),
        "f": f, "f'": fd, "f*": np.conj(f), "f*'": np.conj(fd), "E1": E1, "E1*": np.conj(E1),
    }


def eigenstate_polynomial(qn: QuantumNumbers, sol: AuxSolution, spec: GridSpec, t: float, spin_phase: bool = True) -> SpinorField:
    """|n,m,s> from the symbolic b+ applied exactly to the polynomial prefactor."""
    from .symbolic import build

    _require_normalized(sol)
    ctx = context_at(sol, t)
    m0 = qn.m - qn.n
    g = GaussianPolynomial({(0, -m0): prefactor(m0, qn.s, ctx, spin_phase)}, gaussian_exponent(ctx))
    vals = symbol_values(ctx)
    terms = [(c, a, b, p, q) for c, a, b, p, q, s in build("BPlus").numeric_terms(vals) if s == "11"]
    for _ in range(qn.n):
        g = g.apply_terms(terms)
    psi = g.on_grid(spec) / math.sqrt(math.factorial(qn.n))
    up, dn = _spin_components(psi, qn.s)
    return SpinorField(up, dn, spec, t)
