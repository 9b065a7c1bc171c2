import json
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from susy_pauli.symbolic import QI, CoeffExpr, I, OperatorExpr, anticommutator, build, commutator, sigma, sym, verify_suite
from susy_pauli.symbolic.library import HALF, B, D, E1, a, ac, e, f, fp, r2
from susy_pauli.symbolic.suite import identities, verify_identity

# strategies ------------------------------------------------------------------------

SYMS = ["e", "B", "D", "D'", "B'", "f", "f'", "f*", "f*'", "E1", "E1*", "r2"]
coeffs = st.builds(
    lambda c, re, im, names: CoeffExpr.const(QI(re, im)) * _prod(names) + c,
    st.integers(-2, 2),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.lists(st.sampled_from(SYMS), max_size=3),
)
spins = st.sampled_from([None, "11", "22", "12", "21"])
terms = st.builds(
    lambda c, a_, b_, p, q, s: OperatorExpr.term(c, a_, b_, p, q, s),
    coeffs, st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), spins,
)
operators = st.lists(terms, min_size=1, max_size=3).map(lambda ts: sum(ts[1:], ts[0]))


def _prod(names):
    out = CoeffExpr.const(1)
    for n in names:
        out = out * sym(n)
    return out


# coefficient algebra -----------------------------------------------------------------

def test_floats_are_rejected():
    with pytest.raises(TypeError):
        CoeffExpr.const(0.5)
    with pytest.raises(TypeError):
        OperatorExpr.term(1j)


def test_rewrite_rules():
    assert E1 * sym("E1*") == 1
    assert r2 * r2 == Fraction(1, 2)
    assert (r2 * r2 * r2) == r2 * HALF


def test_unknown_symbols():
    with pytest.raises(ValueError):
        sym("x")
    with pytest.raises(ValueError):
        sym("B*")


def test_derivative_rules():
    assert E1.deriv() == I * e * B * E1
    assert sym("E1*").deriv() == -I * e * B * sym("E1*")
    assert fp.deriv() == -(e * e * B * B + e * sym("D'")) * f
    assert sym("f*'").deriv() == -(e * e * B * B + e * sym("D'")) * sym("f*")
    assert B.deriv() == sym("B'") and sym("D'").deriv() == sym("D''")
    assert e.deriv().is_zero() and r2.deriv().is_zero()


@given(coeffs, coeffs)
def test_coefficient_product_rule(x, y):
    assert (x * y).deriv() == x.deriv() * y + x * y.deriv()


@given(coeffs, coeffs)
def test_coefficient_conjugation(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()


def test_wronskian_reduction():
    w = f * sym("f*'") - sym("f*") * fp
    assert w.reduce_wronskian() == QI(0, -2)


# operator algebra ----------------------------------------------------------------------

@given(operators, operators, operators)
@settings(max_examples=100, deadline=None)
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(operators, operators)
@settings(max_examples=50, deadline=None)
def test_operator_product_rule(x, y):
    assert (x * y).time_derivative() == x.time_derivative() * y + x * y.time_derivative()


@given(operators, operators)
@settings(max_examples=50, deadline=None)
def test_conj_is_automorphism(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x


@given(operators, operators)
@settings(max_examples=50, deadline=None)
def test_adjoint_is_anti_automorphism(x, y):
    assert (x * y).adjoint() == y.adjoint() * x.adjoint()
    assert x.adjoint().adjoint() == x


def test_canonical_commutators():
    z, zb, dz, dzb = (OperatorExpr.term(1, a=1), OperatorExpr.term(1, b=1),
                      OperatorExpr.term(1, p=1), OperatorExpr.term(1, q=1))
    one = OperatorExpr.identity()
    assert commutator(dz, z) == one and commutator(dzb, zb) == one
    assert commutator(dz, zb).is_zero() and commutator(z, zb).is_zero()


def test_spin_algebra():
    sp, sm = sigma("+"), sigma("-")
    assert (sp * sp).is_zero() and (sm * sm).is_zero()
    assert anticommutator(sp, sm) == OperatorExpr.identity()
    assert sigma("z") == sigma("+-") - sigma("-+")


def test_pi_tilde_pair():
    assert build("PiTildeMinus").adjoint() == build("PiTildePlus")
    # formal conjugation is not the adjoint: it keeps d_z* where the adjoint flips its sign
    assert build("PiTildeMinus").conj() != build("PiTildePlus")


# build ------------------------------------------------------------------------------------

def test_build_pi_minus():
    pm = build("PiMinus")
    assert pm.coefficient(p=1) == QI(0, -2)
    assert pm.coefficient(b=1) == -(e * HALF) * (D - I * B)
    assert len(pm.terms) == 4  # two terms, spin-blind


def test_build_lz():
    assert build("Lz") == OperatorExpr.term(1, a=1, p=1) - OperatorExpr.term(1, b=1, q=1)


def test_build_qtilde_plus():
    q = build("QTildePlus")
    assert q.coefficient(p=1, spin="12") == r2 * E1 * QI(0, -2) * f
    assert q.coefficient(b=1, spin="12") == -r2 * E1 * HALF * (fp + e * D * f)
    assert set(k[-1] for k in q.terms) == {"12"}


def test_build_accepts_enum_and_rejects_unknown():
    from susy_pauli.operators import OperatorKind

    assert build(OperatorKind.HTilde) == build("HTilde")
    with pytest.raises(KeyError):
        build("Nope")


def test_time_derivative_of_pi_minus():
    d = build("PiMinus").time_derivative()
    assert d == OperatorExpr.term(-(e * HALF) * (sym("D'") - I * sym("B'")), b=1)


def test_examples_from_brackets():
    assert commutator(build("PiMinus"), build("PiPlus")) == OperatorExpr.term(-2 * e * B)
    assert anticommutator(build("QTildePlus"), build("QTildePlus")).is_zero()
    w = f * sym("f*'") - sym("f*") * fp
    assert commutator(build("PiTildeMinus"), build("PiTildePlus")) == OperatorExpr.term(I * w)


# identity suite ----------------------------------------------------------------------------

def test_suite_passes_quickly():
    t0 = time.perf_counter()
    results = verify_suite()
    assert time.perf_counter() - t0 < 10
    assert len(results) >= 14
    failed = [(r.name, r.surviving_terms) for r in results if not r.passed]
    assert not failed


def test_suite_json():
    r = verify_suite()[0]
    doc = json.loads(r.to_json())
    assert doc == {"name": r.name, "status": "pass", "surviving_terms": []}


def _control(fn, wronskian=False):
    return verify_identity("control", "", fn, wronskian)


def test_negative_control_flipped_relative_signs():
    # each bracket with "+" between its two terms instead of "-" must leave terms behind
    gM, gP = build("PiTildeMinusGeneric"), build("PiTildePlusGeneric")
    piM, piP = build("PiMinus"), build("PiPlus")
    f1, f2, f1c, f2c = sym("f1"), sym("f2"), sym("f1*"), sym("f2*")
    wrong = [
        lambda: commutator(gM, gP) - OperatorExpr.term(I * e * (f1 * f2c * a + f1c * f2 * ac)),
        lambda: commutator(gM, piP) - OperatorExpr.term(I * e * (f1 * a + f2 * ac)),
        lambda: commutator(piM, gP) + OperatorExpr.term(I * e * (f1c * ac + f2c * a)),
    ]
    for fn in wrong:
        res = _control(fn)
        assert res.status == "fail" and res.surviving_terms


def test_negative_control_half_hamiltonian():
    # with H = diag(pi-pi+, pi+pi-)/2 the supercharge stops being an integral of motion
    H_half = build("H").scale(HALF)
    QT = build("QTildePlus")
    res = _control(lambda: QT.time_derivative().scale(I) + commutator(QT, H_half))
    assert res.status == "fail"


def test_negative_control_unnormalized_ladder():
    # without imposing W = -2i the ladder commutator does not reduce to 1
    bM, bP = build("BMinus"), build("BPlus")
    res = _control(lambda: commutator(bM, bP) - OperatorExpr.identity())
    assert res.status == "fail"


def test_every_identity_has_a_description():
    for name, equation, fn, wr in identities():
        assert name and equation and callable(fn)
