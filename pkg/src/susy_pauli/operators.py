"""Matrix-free grid operators of the time-dependent Pauli problem.

Units hbar = 2m = 1, so the Pauli generator is

    H = diag(pi- pi+, pi+ pi-),    pi-+ = -2i d/dz(*) - e conj(a)/2 z* (resp. e a/2 z).

The supercharges keep the conventional 1/sqrt(2):  Q+ = pi- sigma+/sqrt(2),
Q- = pi+ sigma-/sqrt(2), hence {Q+, Q-} = H/2.  All second-order operators are
compositions of first-order ones.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .aux_ode import TimeContext
from .grid import SpinorField, d_both, d_dz, d_dzbar, inner

SQRT2 = np.sqrt(2.0)


class OperatorError(ValueError):
    pass


class OperatorKind(enum.Enum):
    Identity = "Identity"
    PiPlus = "PiPlus"
    PiMinus = "PiMinus"
    PiTildePlus = "PiTildePlus"
    PiTildeMinus = "PiTildeMinus"
    QPlus = "QPlus"
    QMinus = "QMinus"
    QTildePlus = "QTildePlus"
    QTildeMinus = "QTildeMinus"
    H = "H"
    HTilde = "HTilde"
    Lz = "Lz"
    Sz = "Sz"
    Jz = "Jz"
    BTildePlus = "BTildePlus"
    BTildeMinus = "BTildeMinus"
    BPlus = "BPlus"
    BMinus = "BMinus"

    @property
    def needs_aux(self) -> bool:
        return self in _NEEDS_AUX


K = OperatorKind
_NEEDS_AUX = {
    K.PiTildePlus, K.PiTildeMinus, K.QTildePlus, K.QTildeMinus, K.HTilde,
    K.BTildePlus, K.BTildeMinus, K.BPlus, K.BMinus,
}


# scalar (single component) building blocks ----------------------------------

def _a(ctx: TimeContext, b_sign: float) -> complex:
    return complex(ctx.D, b_sign * ctx.B)


def pi_minus(u, spec, ctx, b_sign=1.0):
    return -2j * d_dz(u, spec) - 0.5 * ctx.e * np.conj(_a(ctx, b_sign)) * spec.Zc * u


def pi_plus(u, spec, ctx, b_sign=1.0):
    return -2j * d_dzbar(u, spec) - 0.5 * ctx.e * _a(ctx, b_sign) * spec.Z * u


def pit_minus(u, spec, ctx):
    g = ctx.f_dot + ctx.e * ctx.D * ctx.f
    return np.exp(1j * ctx.omega) * (-2j * ctx.f * d_dz(u, spec) - 0.5 * g * spec.Zc * u)


def pit_plus(u, spec, ctx):
    fc, fdc = np.conj(ctx.f), np.conj(ctx.f_dot)
    g = fdc + ctx.e * ctx.D * fc
    return np.exp(-1j * ctx.omega) * (-2j * fc * d_dzbar(u, spec) - 0.5 * g * spec.Z * u)


def lz(u, spec):
    uz, uzb = d_both(u, spec)
    return spec.Z * uz - spec.Zc * uzb


# spinor level ----------------------------------------------------------------

def apply(kind: OperatorKind, field: SpinorField, ctx: TimeContext, *, b_sign: float = 1.0) -> SpinorField:
    """Image of ``field`` under ``kind`` at the instant described by ``ctx``.

    ``b_sign=-1`` flips the magnetic field in pi and Q (used for Q+(-B)).
    sigma+ maps the down component to up, sigma- maps up to down.
    """
    if abs(field.t - ctx.t) > 1e-12 * max(1.0, abs(ctx.t)):
        raise OperatorError(f"field time {field.t} does not match context time {ctx.t}")
    if kind.needs_aux and not ctx.has_aux:
        raise OperatorError(f"{kind.name} needs an auxiliary solution f(t); context has none")
    spec = field.spec
    up, dn = field.up, field.down
    zero = np.zeros_like(up)

    if kind is K.Identity:
        return field
    if kind is K.PiMinus:
        return field.with_components(pi_minus(up, spec, ctx, b_sign), pi_minus(dn, spec, ctx, b_sign))
    if kind is K.PiPlus:
        return field.with_components(pi_plus(up, spec, ctx, b_sign), pi_plus(dn, spec, ctx, b_sign))
    if kind is K.PiTildeMinus:
        return field.with_components(pit_minus(up, spec, ctx), pit_minus(dn, spec, ctx))
    if kind is K.PiTildePlus:
        return field.with_components(pit_plus(up, spec, ctx), pit_plus(dn, spec, ctx))
    if kind is K.QPlus:
        return field.with_components(pi_minus(dn, spec, ctx, b_sign) / SQRT2, zero)
    if kind is K.QMinus:
        return field.with_components(zero, pi_plus(up, spec, ctx, b_sign) / SQRT2)
    if kind is K.QTildePlus:
        return field.with_components(pit_minus(dn, spec, ctx) / SQRT2, zero)
    if kind is K.QTildeMinus:
        return field.with_components(zero, pit_plus(up, spec, ctx) / SQRT2)
    if kind is K.H:
        return field.with_components(
            pi_minus(pi_plus(up, spec, ctx), spec, ctx),
            pi_plus(pi_minus(dn, spec, ctx), spec, ctx),
        )
    if kind is K.HTilde:
        return field.with_components(
            0.5 * pit_minus(pit_plus(up, spec, ctx), spec, ctx),
            0.5 * pit_plus(pit_minus(dn, spec, ctx), spec, ctx),
        )
    if kind is K.Lz:
        return field.with_components(lz(up, spec), lz(dn, spec))
    if kind is K.Sz:
        return field.with_components(0.5 * up, -0.5 * dn)
    if kind is K.Jz:
        return field.with_components(lz(up, spec) + 0.5 * up, lz(dn, spec) - 0.5 * dn)
    if kind is K.BTildeMinus:
        return apply(K.PiTildeMinus, field, ctx) * (1 / SQRT2)
    if kind is K.BTildePlus:
        return apply(K.PiTildePlus, field, ctx) * (1 / SQRT2)
    if kind is K.BMinus:
        return apply(K.PiTildeMinus, field, ctx) * (np.exp(-2j * ctx.omega) / SQRT2)
    if kind is K.BPlus:
        return apply(K.PiTildePlus, field, ctx) * (np.exp(2j * ctx.omega) / SQRT2)
    raise OperatorError(f"unhandled operator {kind}")


def apply_chain(kinds: Sequence[OperatorKind], field: SpinorField, ctx: TimeContext) -> SpinorField:
    """Apply right-to-left, as the product ``kinds[0] @ kinds[1] @ ...`` would."""
    for k in reversed(kinds):
        field = apply(k, field, ctx)
    return field


Combination = Sequence[tuple[complex, OperatorKind]]


def _combine(expected: Combination, field: SpinorField, ctx: TimeContext) -> SpinorField:
    out = SpinorField.zeros(field.spec, field.t)
    for c, k in expected:
        out = out + apply(k, field, ctx) * c
    return out


def commutator_residual(a: OperatorKind, b: OperatorKind, expected: Combination, field: SpinorField, ctx: TimeContext) -> float:
    """||([A, B] - sum c_k K_k) psi|| / ||psi||."""
    ab = apply(a, apply(b, field, ctx), ctx)
    ba = apply(b, apply(a, field, ctx), ctx)
    return (ab - ba - _combine(expected, field, ctx)).norm() / field.norm()


def anticommutator_residual(a: OperatorKind, b: OperatorKind, expected: Combination, field: SpinorField, ctx: TimeContext) -> float:
    ab = apply(a, apply(b, field, ctx), ctx)
    ba = apply(b, apply(a, field, ctx), ctx)
    return (ab + ba - _combine(expected, field, ctx)).norm() / field.norm()


def expectation(kind: OperatorKind, field: SpinorField, ctx: TimeContext) -> complex:
    return inner(field, apply(kind, field, ctx)) / inner(field, field)


def q_of_minus_B_check(field: SpinorField, ctx: TimeContext) -> float:
    """||(Q~+ - c2 exp(2i w0 t) Q+(-B)) psi|| / ||psi|| for a constant field with D = 0.

    ``c2`` is read off the context (f = c2 exp(i w0 t), w0 = eB); the relation
    holds on this branch only.
    """
    prof = ctx.profile
    if prof is None or not prof.is_static_B or ctx.D != 0.0 or ctx.D_dot != 0.0:
        raise OperatorError("the Q+(-B) relation needs a constant magnetic field with D = 0")
    if not ctx.has_aux:
        raise OperatorError("QTildePlus needs an auxiliary solution")
    w0 = ctx.e * ctx.B
    if abs(ctx.f_dot - 1j * w0 * ctx.f) > 1e-9 * max(1.0, abs(ctx.f)):
        raise OperatorError("auxiliary solution is not on the exp(+i w t) branch (c1 = 0)")
    c2 = ctx.f * np.exp(-1j * w0 * ctx.t)
    lhs = apply(K.QTildePlus, field, ctx)
    rhs = apply(K.QPlus, field, ctx, b_sign=-1.0) * (c2 * np.exp(2j * w0 * ctx.t))
    return (lhs - rhs).norm() / field.norm()


def probe_field(spec, seed: int, t: float = 0.0, width: float | None = None, degree: int = 2) -> SpinorField:
    """Seeded smooth decaying probe: Gaussian envelope times a random polynomial in z, z*."""
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.6, 0.8) if width is None else width
    comps = []
    for _ in range(2):
        z0 = complex(*rng.uniform(-0.8, 0.8, 2))
        dz = spec.Z - z0
        poly = np.zeros_like(dz)
        for p in range(degree + 1):
            for q in range(degree + 1 - p):
                c = complex(*rng.normal(size=2))
                poly = poly + c * dz**p * np.conj(dz) ** q
        comps.append(poly * np.exp(-np.abs(dz) ** 2 / (4 * w * w)))
    field = SpinorField(comps[0], comps[1], spec, t)
    return field * (1 / field.norm())
