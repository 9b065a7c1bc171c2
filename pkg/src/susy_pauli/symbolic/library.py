"""Symbolic forms of every operator of the problem.

``a = D + iB`` is expanded at build time.  Kinds ending in ``Generic`` use the
unknown functions ``f1``, ``f2`` (or ``Y`` = e f2 conj(a)) instead of the
solved coefficients, for checking the equations that determine them.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import I, QI, CoeffExpr, sym
from .operator import OperatorExpr

HALF = Fraction(1, 2)

e, B, D = sym("e"), sym("B"), sym("D")
f, fp, fc, fcp = sym("f"), sym("f'"), sym("f*"), sym("f*'")
E1, E1c = sym("E1"), sym("E1*")
r2 = sym("r2")
a = D + B * I
ac = D - B * I


def _op(coeff=1, a=0, b=0, p=0, q=0, spin=None):
    return OperatorExpr.term(coeff, a, b, p, q, spin)


def z():
    return _op(1, a=1)


def zb():
    return _op(1, b=1)


def dz():
    return _op(1, p=1)


def dzb():
    return _op(1, q=1)


def sigma(name: str) -> OperatorExpr:
    table = {"+": "12", "-": "21", "+-": "11", "-+": "22"}
    if name == "z":
        return _op(1, spin="11") - _op(1, spin="22")
    return _op(1, spin=table[name])


def _build_all() -> dict[str, OperatorExpr]:
    m2i = CoeffExpr.const(QI(0, -2))
    ops: dict[str, OperatorExpr] = {}
    ops["Identity"] = OperatorExpr.identity()
    ops["PiMinus"] = dz() * m2i - zb() * (e * ac * HALF)
    ops["PiPlus"] = dzb() * m2i - z() * (e * a * HALF)
    ops["PiTildeMinus"] = (dz() * (m2i * f) - zb() * ((fp + e * D * f) * HALF)) * E1
    ops["PiTildePlus"] = (dzb() * (m2i * fc) - z() * ((fcp + e * D * fc) * HALF)) * E1c
    ops["PiTildeMinusGeneric"] = dz() * (m2i * sym("f1")) - zb() * (sym("f2") * e * ac * HALF)
    ops["PiTildePlusGeneric"] = dzb() * (m2i * sym("f1*")) - z() * (sym("f2*") * e * a * HALF)
    ops["PiTildeMinusY"] = dz() * (m2i * sym("f1")) - zb() * (sym("Y") * HALF)

    ops["QPlus"] = ops["PiMinus"] * sigma("+") * r2
    ops["QMinus"] = ops["PiPlus"] * sigma("-") * r2
    ops["QTildePlus"] = ops["PiTildeMinus"] * sigma("+") * r2
    ops["QTildeMinus"] = ops["PiTildePlus"] * sigma("-") * r2

    ops["HPlus"] = ops["PiMinus"] * ops["PiPlus"]
    ops["HMinus"] = ops["PiPlus"] * ops["PiMinus"]
    ops["H"] = ops["HPlus"] * sigma("+-") + ops["HMinus"] * sigma("-+")
    ops["HTilde"] = (
        ops["PiTildeMinus"] * ops["PiTildePlus"] * sigma("+-") + ops["PiTildePlus"] * ops["PiTildeMinus"] * sigma("-+")
    ) * HALF

    ops["Lz"] = z() * dz() - zb() * dzb()
    ops["Sz"] = sigma("z") * HALF
    ops["Jz"] = ops["Lz"] + ops["Sz"]

    ops["BTildeMinus"] = ops["PiTildeMinus"] * r2
    ops["BTildePlus"] = ops["PiTildePlus"] * r2
    ops["BMinus"] = ops["BTildeMinus"] * (E1c * E1c)
    ops["BPlus"] = ops["BTildePlus"] * (E1 * E1)
    ops["IntegralI"] = ops["PiTildeMinus"] * (E1c * E1c)
    return ops


_OPS = _build_all()
KINDS = tuple(_OPS)


def build(kind) -> OperatorExpr:
    """Canonical normal form of ``kind`` (a name or an ``OperatorKind``)."""
    name = getattr(kind, "value", kind)
    try:
        return _OPS[name]
    except KeyError:
        raise KeyError(f"no symbolic form for {name!r}; known: {', '.join(KINDS)}") from None
