"""Normal-ordered differential operators in z, z* tensored with 2x2 spin matrices.

A term is ``c * z^a z*^b d_z^p d_z*^q (x) S`` with the derivatives to the right
and ``S`` one of the matrix units

    "11" = sigma+ sigma-  (projector on spin up)
    "22" = sigma- sigma+  (projector on spin down)
    "12" = sigma+,  "21" = sigma-

so that 1 = "11" + "22" and sigma_z = "11" - "22".  Products are brought back to
normal form with [d_z, z] = 1 and [d_z*, z*] = 1; the z and z* sectors commute
and coefficients commute with everything.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Callable, Iterator

from .coeff import CoeffExpr, QI

SPINS = ("11", "22", "12", "21")
_SPIN_FLIP = {"11": "22", "22": "11", "12": "21", "21": "12"}
SPIN_NAMES = {"11": "s+s-", "22": "s-s+", "12": "s+", "21": "s-"}

Key = tuple  # (a, b, p, q, spin)


def _spin_mul(s: str, t: str) -> str | None:
    return s[0] + t[1] if s[1] == t[0] else None


def _order_1d(p: int, c: int) -> Iterator[tuple[int, int, int]]:
    """d^p x^c = sum_k C(p,k) c!/(c-k)! x^(c-k) d^(p-k); yields (weight, c-k, p-k)."""
    for k in range(min(p, c) + 1):
        yield comb(p, k) * factorial(c) // factorial(c - k), c - k, p - k


class OperatorExpr:
    """Finite sum of normal-ordered terms.  Immutable; equality is exact."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, CoeffExpr] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    # elementary operators -------------------------------------------------------
    @classmethod
    def term(cls, coeff=1, a=0, b=0, p=0, q=0, spin: str | None = None) -> OperatorExpr:
        c = CoeffExpr.coerce(coeff)
        if spin is None:
            return cls({(a, b, p, q, "11"): c, (a, b, p, q, "22"): c})
        if spin not in SPINS:
            raise ValueError(f"unknown spin factor {spin!r}")
        return cls({(a, b, p, q, spin): c})

    @classmethod
    def identity(cls) -> OperatorExpr:
        return cls.term(1)

    @classmethod
    def zero(cls) -> OperatorExpr:
        return cls()

    # arithmetic --------------------------------------------------------------------
    def __add__(self, o: OperatorExpr) -> OperatorExpr:
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return OperatorExpr(out)

    def __neg__(self) -> OperatorExpr:
        return OperatorExpr({k: -v for k, v in self.terms.items()})

    def __sub__(self, o: OperatorExpr) -> OperatorExpr:
        return self + (-o)

    def scale(self, c) -> OperatorExpr:
        c = CoeffExpr.coerce(c)
        return OperatorExpr({k: v * c for k, v in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, OperatorExpr):
            return self.scale(o)
        out: dict[Key, CoeffExpr] = {}
        for (a1, b1, p1, q1, s1), c1 in self.terms.items():
            for (a2, b2, p2, q2, s2), c2 in o.terms.items():
                s = _spin_mul(s1, s2)
                if s is None:
                    continue
                c12 = c1 * c2
                for wz, az, pz in _order_1d(p1, a2):
                    for wb, bb, qb in _order_1d(q1, b2):
                        key = (a1 + az, b1 + bb, pz + p2, qb + q2, s)
                        add = c12 * QI(wz * wb)
                        out[key] = out[key] + add if key in out else add
        return OperatorExpr(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> OperatorExpr:
        out = OperatorExpr.identity()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o):
        if not isinstance(o, OperatorExpr):
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    # maps on coefficients --------------------------------------------------------------
    def map_coeffs(self, fn: Callable[[CoeffExpr], CoeffExpr]) -> OperatorExpr:
        return OperatorExpr({k: fn(v) for k, v in self.terms.items()})

    def time_derivative(self) -> OperatorExpr:
        return self.map_coeffs(CoeffExpr.deriv)

    def reduce_wronskian(self) -> OperatorExpr:
        return self.map_coeffs(CoeffExpr.reduce_wronskian)

    def substitute(self, mapping) -> OperatorExpr:
        return self.map_coeffs(lambda c: c.substitute(mapping))

    def conj(self) -> OperatorExpr:
        """Formal complex conjugation: coefficients conjugated, z <-> z*,
        d_z <-> d_z*, sigma+ <-> sigma-.  An automorphism (order preserved)."""
        out = OperatorExpr()
        for (a, b, p, q, s), c in self.terms.items():
            out = out + OperatorExpr({(b, a, q, p, _SPIN_FLIP[s]): c.conj()})
        return out

    def adjoint(self) -> OperatorExpr:
        """Hermitian adjoint: an anti-automorphism with z^dag = z*,
        (d_z)^dag = -d_z*, sigma+^dag = sigma-."""
        out = OperatorExpr()
        for (a, b, p, q, s), c in self.terms.items():
            derivs = OperatorExpr.term(CoeffExpr.const((-1) ** (p + q)), 0, 0, q, p, s[::-1])
            mults = OperatorExpr.term(c.conj(), b, a, 0, 0)
            out = out + derivs * mults
        return out

    def coefficient(self, a=0, b=0, p=0, q=0, spin: str | None = None) -> CoeffExpr:
        if spin is None:
            c11 = self.terms.get((a, b, p, q, "11"), CoeffExpr.const(0))
            c22 = self.terms.get((a, b, p, q, "22"), CoeffExpr.const(0))
            if not (c11 - c22).is_zero():
                raise ValueError("coefficient is not spin-blind")
            return c11
        return self.terms.get((a, b, p, q, spin), CoeffExpr.const(0))

    def numeric_terms(self, values) -> list[tuple[complex, int, int, int, int, str]]:
        return [(v.evaluate(values), *k) for k, v in sorted(self.terms.items())]

    def term_strings(self) -> list[str]:
        out = []
        for (a, b, p, q, s), c in sorted(self.terms.items()):
            ops = []
            if a:
                ops.append("z" if a == 1 else f"z^{a}")
            if b:
                ops.append("z*" if b == 1 else f"z*^{b}")
            if p:
                ops.append("dz" if p == 1 else f"dz^{p}")
            if q:
                ops.append("dz*" if q == 1 else f"dz*^{q}")
            ops.append(SPIN_NAMES[s])
            out.append(f"({c!r}) " + " ".join(ops))
        return out

    def __repr__(self):
        return " + ".join(self.term_strings()) if self.terms else "0"


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b - b * a


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b + b * a


def multiply(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b
