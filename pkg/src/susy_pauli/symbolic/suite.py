"""Exact verification of the operator identities.

Each identity is written as ``residual == 0``; the suite reports the number of
surviving normal-form terms.  Identities tagged ``wronskian`` are reduced
modulo ``f f*' - f* f' = -2i`` first.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from .coeff import I, CoeffExpr, sym
from .library import HALF, a, ac, build, e, sigma
from .operator import OperatorExpr, anticommutator, commutator


@dataclass
class IdentityResult:
    name: str
    equation: str
    status: str
    surviving_terms: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "status": self.status, "surviving_terms": self.surviving_terms})


def _imotion(op: OperatorExpr, ham: OperatorExpr) -> OperatorExpr:
    """i dO/dt + [O, H]; zero for an integral of motion."""
    return op.time_derivative().scale(I) + commutator(op, ham)


def _ident(c) -> OperatorExpr:
    return OperatorExpr.identity().scale(c)


def _sum(*exprs: OperatorExpr) -> OperatorExpr:
    out = OperatorExpr.zero()
    for x in exprs:
        out = out + x
    return out


def _f1f2_system() -> tuple[CoeffExpr, CoeffExpr]:
    """The two scalar equations for f1 and Y = e f2 conj(a) (the second times e)."""
    f1, Y = sym("f1"), sym("Y")
    eq_a = sym("f1'") + e * ac * f1 - Y
    eq_b = sym("Y'") + e * e * a * ac * f1 - e * a * Y
    return eq_a, eq_b


def _f1f2_solution() -> dict[str, CoeffExpr]:
    f, fp, E1 = sym("f"), sym("f'"), sym("E1")
    f1 = f * E1
    Y = (e * sym("D") * f + fp) * E1
    return {"f1": f1, "f1'": f1.deriv(), "Y": Y, "Y'": Y.deriv()}


def _system_from_motion() -> OperatorExpr:
    pi = build("PiTildeMinusY")
    lhs = pi.time_derivative().scale(I) + pi * build("HMinus") - build("HPlus") * pi
    eq_a, eq_b = _f1f2_system()
    structure = OperatorExpr.term(eq_a * 2, p=1) + OperatorExpr.term(-(eq_b * I * HALF), b=1)
    return lhs - structure


def _system_solved() -> OperatorExpr:
    sub = _f1f2_solution()
    eq_a, eq_b = _f1f2_system()
    return OperatorExpr.term(eq_a.substitute(sub), p=1) + OperatorExpr.term(eq_b.substitute(sub), b=1)


def identities() -> list[tuple[str, str, Callable[[], OperatorExpr], bool]]:
    b = build
    piM, piP = b("PiMinus"), b("PiPlus")
    ptM, ptP = b("PiTildeMinus"), b("PiTildePlus")
    gM, gP = b("PiTildeMinusGeneric"), b("PiTildePlusGeneric")
    f1, f2 = sym("f1"), sym("f2")
    f1c, f2c = sym("f1*"), sym("f2*")
    Q, Qm = b("QPlus"), b("QMinus")
    QT, QTm = b("QTildePlus"), b("QTildeMinus")
    H, Hp, Hm, HT = b("H"), b("HPlus"), b("HMinus"), b("HTilde")
    Lz, Sz, Jz = b("Lz"), b("Sz"), b("Jz")
    bM, bP, btM, btP = b("BMinus"), b("BPlus"), b("BTildeMinus"), b("BTildePlus")
    E1, E1c = sym("E1"), sym("E1*")
    ieB2 = e * sym("B") * 2
    wr = sym("f") * sym("f*'") - sym("f*") * sym("f'")

    return [
        ("stationary_nilpotent", "(Q+-)^2 = 0", lambda: _sum(Q * Q, Qm * Qm), False),
        ("stationary_commute_H", "[Q+-, H] = 0", lambda: _sum(commutator(Q, H), commutator(Qm, H)), False),
        ("pi_commutator", "[pi-, pi+] = ie(a - a*) = -2eB",
         lambda: _sum(commutator(piM, piP) - _ident(I * e * (a - ac)), commutator(piM, piP) + _ident(ieB2)), False),
        ("generic_pitilde_commutator", "[pi~-, pi~+] = ie(f1 f2* a - f1* f2 a*)",
         lambda: commutator(gM, gP) - _ident(I * e * (f1 * f2c * a - f1c * f2 * ac)), False),
        ("generic_pitilde_pi_commutator", "[pi~-, pi+] = ie(f1 a - f2 a*)",
         lambda: commutator(gM, piP) - _ident(I * e * (f1 * a - f2 * ac)), False),
        ("pi_generic_pitilde_commutator", "[pi-, pi~+] = -ie(f1* a* - f2* a)",
         lambda: commutator(piM, gP) + _ident(I * e * (f1c * ac - f2c * a)), False),
        ("same_chirality_commute", "[pi-, pi~-] = [pi+, pi~+] = 0",
         lambda: _sum(commutator(piM, gM), commutator(piP, gP)), False),
        ("pitilde_minus_motion", "i d(pi~-)/dt + pi~- H- - H+ pi~- = 0",
         lambda: ptM.time_derivative().scale(I) + ptM * Hm - Hp * ptM, False),
        ("pitilde_minus_motion_via_field", "H+ - H- = -2eB and i d(pi~-)/dt + [pi~-, H-] + 2eB pi~- = 0",
         lambda: _sum(Hp - Hm + _ident(ieB2), ptM.time_derivative().scale(I) + commutator(ptM, Hm) + ptM.scale(ieB2)), False),
        ("integral_I_motion", "I = exp(-2i Omega) pi~- obeys i dI/dt + [I, H-+] = 0",
         lambda: _sum(_imotion(b("IntegralI"), Hm), _imotion(b("IntegralI"), Hp)), False),
        ("pitilde_plus_from_I", "pi~+ = exp(-2i Omega) I^dag",
         lambda: ptP - b("IntegralI").adjoint() * (E1c * E1c), False),
        ("f1f2_system_from_motion", "motion equation with generic f1, f2 = 2 A dz - (i/2) B z* for the f1, f2 system (A, B)", _system_from_motion, False),
        ("f1f2_system_solved", "f1 = f E1, Y = (eDf + f') E1 solve the f1, f2 system given f'' = -((eB)^2 + eD') f", _system_solved, False),
        ("pitilde_adjoint", "pi~+ = (pi~-)^dag", lambda: ptP - ptM.adjoint(), False),
        ("QTildePlus_integral", "i dQ~+/dt + [Q~+, H] = 0", lambda: _imotion(QT, H), False),
        ("QTildeMinus_integral", "i dQ~-/dt + [Q~-, H] = 0", lambda: _imotion(QTm, H), False),
        ("superalgebra", "{Q~+, Q~-} = H~, (Q~+-)^2 = 0",
         lambda: _sum(anticommutator(QT, QTm) - HT, QT * QT, QTm * QTm), False),
        ("HTilde_integral", "i dH~/dt + [H~, H] = 0", lambda: _imotion(HT, H), False),
        ("Lz_Sz_integral", "i dLz/dt + [Lz, H] = 0", lambda: _imotion(Lz, H) + _imotion(Sz, H), False),
        ("pitilde_Lz", "[pi~+-, Lz] = -+ pi~+-", lambda: _sum(commutator(ptP, Lz) + ptP, commutator(ptM, Lz) - ptM), False),
        ("extended_algebra", "[Q~+-, Lz] = +-Q~+-, [Q~+-, Sz] = -+Q~+-, [Lz, H~] = [Sz, H~] = [Sz, Lz] = 0",
         lambda: _sum(
             commutator(QT, Lz) - QT, commutator(QTm, Lz) + QTm,
             commutator(QT, Sz) + QT, commutator(QTm, Sz) - QTm,
             commutator(Lz, HT), commutator(Sz, HT), commutator(Sz, Lz)), False),
        ("total_J", "J = Lz + Sz commutes with Q~+-, H~, Lz, Sz",
         lambda: _sum(*(commutator(Jz, x) for x in (QT, QTm, HT, Lz, Sz))), False),
        ("pitilde_wronskian", "[pi~-, pi~+] = i(f f*' - f* f')", lambda: commutator(ptM, ptP) - _ident(I * wr), False),
        ("pitilde_normalized", "[pi~-, pi~+] = 2 for W = -2i", lambda: commutator(ptM, ptP) - _ident(2), True),
        ("ladder_integrals", "b+- = exp(+-2i Omega) b~+- are integrals of motion",
         lambda: _sum(_imotion(bM, H), _imotion(bP, H), bM - btM * (E1c * E1c), bP - btP * (E1 * E1)), False),
        ("ladder_commutator", "[b-, b+] = 1 = [b~-, b~+]", lambda: _sum(commutator(bM, bP) - _ident(1), commutator(btM, btP) - _ident(1)), True),
        ("ladder_Lz", "[b+-, Lz] = -+ b+-", lambda: _sum(commutator(bP, Lz) + bP, commutator(bM, Lz) - bM), False),
        ("HTilde_ladder_form", "H~ = b~+ b~- + s+ s- = b+ b- + Sz + 1/2",
         lambda: _sum(HT - btP * btM - sigma("+-"), HT - bP * bM - Sz - _ident(HALF)), True),
        ("QTilde_ladder_form", "Q~+ = b~- s+ = exp(2i Omega) b- s+, Q~- = b~+ s- = exp(-2i Omega) b+ s-",
         lambda: _sum(QT - btM * sigma("+"), QT - bM * sigma("+") * (E1 * E1),
                      QTm - btP * sigma("-"), QTm - bP * sigma("-") * (E1c * E1c)), False),
    ]


def verify_identity(name, equation, fn, wronskian) -> IdentityResult:
    t0 = time.perf_counter()
    res = fn()
    if wronskian:
        res = res.reduce_wronskian()
    dt = time.perf_counter() - t0
    status = "pass" if res.is_zero() else "fail"
    return IdentityResult(name, equation, status, res.term_strings(), dt)


def verify_suite() -> list[IdentityResult]:
    return [verify_identity(*spec) for spec in identities()]


def format_report(results: list[IdentityResult]) -> str:
    lines = []
    w = max(len(r.name) for r in results)
    for r in results:
        lines.append(f"{r.name:<{w}}  {r.status.upper():4}  terms={len(r.surviving_terms)}  {r.equation}")
        for t in r.surviving_terms:
            lines.append(f"{'':<{w}}    surviving: {t}")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} identities reduce to zero")
    return "\n".join(lines)
