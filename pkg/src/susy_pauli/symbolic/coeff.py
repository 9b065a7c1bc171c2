"""Commutative coefficient algebra over Q(i).

Generators are named symbols.  A name is a base, an optional ``*`` marking the
complex conjugate, and primes for time derivatives, e.g. ``f``, ``f*'``,
``D''``.  Real bases: ``e``, ``B``, ``D``, ``r2`` (= 1/sqrt 2).  Complex bases
carry a conjugate partner: ``f`` (auxiliary solution), ``E1`` (= exp(i Omega))
and the generic unknowns ``f1``, ``f2``, ``Y``.

Rewrite rules applied on every product:

* ``E1 * E1* -> 1``
* ``r2**2 -> 1/2``

The time derivative uses ``Omega' = eB`` and ``f'' = -((eB)^2 + eD') f``;
every other base just gains a prime.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

REAL_BASES = {"e", "B", "D", "r2"}
CONSTANT_BASES = {"e", "r2"}
COMPLEX_BASES = {"f", "E1", "f1", "f2", "Y"}

_NAME = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(\*?)('*)$")


def parse_name(name: str) -> tuple[str, bool, int]:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"bad symbol name {name!r}")
    base, star, primes = m.groups()
    if base not in REAL_BASES | COMPLEX_BASES:
        raise ValueError(f"unknown symbol base {base!r}")
    if star and base in REAL_BASES:
        raise ValueError(f"real symbol {base!r} has no conjugate")
    return base, bool(star), len(primes)


def make_name(base: str, star: bool, order: int) -> str:
    return base + ("*" if star else "") + "'" * order


class QI:
    """Exact Gaussian rational re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, v) -> QI:
        if isinstance(v, QI):
            return v
        if isinstance(v, complex):
            raise TypeError("floating complex coefficients are not allowed; use QI")
        if isinstance(v, float):
            raise TypeError("floating coefficients are not allowed; use Fraction")
        return cls(v, 0)

    @staticmethod
    def _maybe(o):
        if isinstance(o, (QI, int, Fraction)):
            return QI.coerce(o)
        if isinstance(o, (float, complex)):
            QI.coerce(o)
        return None

    def __add__(self, o):
        o = QI._maybe(o)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-QI.coerce(o))

    def __mul__(self, o):
        o = QI._maybe(o)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> QI:
        return QI(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = QI.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


I = QI(0, 1)

Monomial = tuple  # sorted tuple of (name, power)


def _normalize_monomial(powers: dict[str, int]) -> tuple[QI, Monomial]:
    factor = QI(1)
    k = min(powers.get("E1", 0), powers.get("E1*", 0))
    if k:
        powers["E1"] -= k
        powers["E1*"] -= k
    r = powers.get("r2", 0)
    if r >= 2:
        factor = factor * QI(Fraction(1, 2 ** (r // 2)))
        powers["r2"] = r % 2
    mono = tuple(sorted((n, p) for n, p in powers.items() if p))
    return factor, mono


class CoeffExpr:
    """Polynomial in the symbol generators with Q(i) coefficients.  Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, QI] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c=1) -> CoeffExpr:
        c = QI.coerce(c)
        return cls({(): c})

    @classmethod
    def sym(cls, name: str, power: int = 1) -> CoeffExpr:
        parse_name(name)
        factor, mono = _normalize_monomial({name: power})
        return cls({mono: factor})

    @classmethod
    def coerce(cls, v) -> CoeffExpr:
        return v if isinstance(v, CoeffExpr) else cls.const(v)

    # ring operations --------------------------------------------------------
    def __add__(self, o):
        o = CoeffExpr.coerce(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, QI(0)) + c
        return CoeffExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-CoeffExpr.coerce(o))

    def __rsub__(self, o):
        return CoeffExpr.coerce(o) - self

    def __mul__(self, o):
        o = CoeffExpr.coerce(o)
        out: dict[Monomial, QI] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                powers = dict(m1)
                for n, p in m2:
                    powers[n] = powers.get(n, 0) + p
                factor, mono = _normalize_monomial(powers)
                out[mono] = out.get(mono, QI(0)) + c1 * c2 * factor
        return CoeffExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CoeffExpr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o):
        if not isinstance(o, CoeffExpr):
            try:
                o = CoeffExpr.coerce(o)
            except TypeError:
                return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # involution and derivation ------------------------------------------------
    def conj(self) -> CoeffExpr:
        out = CoeffExpr.const(0)
        for m, c in self.terms.items():
            term = CoeffExpr.const(c.conj())
            for n, p in m:
                base, star, order = parse_name(n)
                cn = make_name(base, (not star) if base in COMPLEX_BASES else False, order)
                term = term * CoeffExpr.sym(cn, p)
            out = out + term
        return out

    def deriv(self) -> CoeffExpr:
        """Formal d/dt with the product rule and the auxiliary-equation rewrite."""
        out = CoeffExpr.const(0)
        for m, c in self.terms.items():
            for i, (n, p) in enumerate(m):
                d = symbol_derivative(n)
                if d.is_zero():
                    continue
                rest = {nn: pp for j, (nn, pp) in enumerate(m) if j != i}
                if p > 1:
                    rest[n] = p - 1
                rest_expr = CoeffExpr({(): c * p}) * _from_powers(rest)
                out = out + rest_expr * d
        return out

    def substitute(self, mapping: Mapping[str, CoeffExpr]) -> CoeffExpr:
        out = CoeffExpr.const(0)
        for m, c in self.terms.items():
            term = CoeffExpr.const(c)
            for n, p in m:
                base_expr = mapping.get(n)
                term = term * (base_expr**p if base_expr is not None else CoeffExpr.sym(n, p))
            out = out + term
        return out

    def reduce_wronskian(self) -> CoeffExpr:
        """Reduce modulo f f*' - f* f' = -2i via the rule f f*' -> f* f' - 2i."""
        rule = CoeffExpr.sym("f*") * CoeffExpr.sym("f'") + CoeffExpr.const(QI(0, -2))
        expr = self
        while True:
            done = True
            out = CoeffExpr.const(0)
            for m, c in expr.terms.items():
                powers = dict(m)
                if powers.get("f", 0) and powers.get("f*'", 0):
                    done = False
                    powers["f"] -= 1
                    powers["f*'"] -= 1
                    out = out + CoeffExpr({(): c}) * _from_powers(powers) * rule
                else:
                    out = out + CoeffExpr({m: c})
            expr = out
            if done:
                return expr

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for n, p in m:
                v *= complex(values[n]) ** p
            total += v
        return total

    def symbols(self) -> set[str]:
        return {n for m in self.terms for n, _ in m}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            mono = " ".join(n if p == 1 else f"{n}^{p}" for n, p in m)
            if not mono:
                parts.append(repr(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c!r} {mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _from_powers(powers: Mapping[str, int]) -> CoeffExpr:
    factor, mono = _normalize_monomial({n: p for n, p in powers.items() if p})
    return CoeffExpr({mono: factor})


def sym(name: str) -> CoeffExpr:
    return CoeffExpr.sym(name)


def symbol_derivative(name: str) -> CoeffExpr:
    base, star, order = parse_name(name)
    if base in CONSTANT_BASES:
        return CoeffExpr.const(0)
    if base == "E1":
        # d/dt exp(+-i Omega) = +-i e B exp(+-i Omega)
        return CoeffExpr.const(QI(0, -1 if star else 1)) * sym("e") * sym("B") * sym(name)
    if base == "f" and order == 1:
        k2 = sym("e") * sym("e") * sym("B") * sym("B") + sym("e") * sym("D'")
        return -k2 * sym(make_name("f", star, 0))
    return sym(make_name(base, star, order + 1))
