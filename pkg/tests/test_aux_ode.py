import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from susy_pauli import aux_ode
from susy_pauli.aux_ode import SpanError, WronskianError
from susy_pauli.fields import FieldProfile, PhysicalConfig

CFG = PhysicalConfig()
T = np.linspace(0, 10, 1001)


def test_landau_branch_is_exp_it():
    sol = aux_ode.solve(FieldProfile.constant(1.0), CFG, 0, 10, tol=1e-12)
    f, _, om = sol.evaluate(T)
    assert np.abs(f - np.exp(1j * T)).max() <= 1e-11
    assert np.abs(om - T).max() <= 1e-11


def test_free_case_is_constant():
    sol = aux_ode.solve(FieldProfile.constant(0.0), CFG, 0, 10, f0=1, f0_dot=0, tol=1e-10)
    f, fd, _ = sol.evaluate(T)
    assert np.abs(f - 1).max() == 0 and np.abs(fd).max() == 0


def test_linear_D_matches_closed_form():
    sol = aux_ode.solve(FieldProfile.linear_D(1.0, 1.0), CFG, 0, 10, tol=1e-12)
    c1, c2 = (1 - 1 / np.sqrt(2)) / 2, (1 + 1 / np.sqrt(2)) / 2
    w = np.sqrt(2)
    exact = c1 * np.exp(-1j * w * T) + c2 * np.exp(1j * w * T)
    assert np.abs(sol.evaluate(T)[0] - exact).max() <= 1e-10
    np.testing.assert_allclose(exact[0], 1)


@pytest.mark.parametrize("tol", [1e-8, 1e-10])
def test_error_tracks_tolerance(tol):
    sol = aux_ode.solve(FieldProfile.linear_D(1.0, 1.0), CFG, 0, 10, tol=tol)
    ana = aux_ode.analytic_constant(CFG, 1.0, 1.0, (1 - 1 / np.sqrt(2)) / 2, (1 + 1 / np.sqrt(2)) / 2)
    assert np.abs(sol.evaluate(T)[0] - ana.evaluate(T)[0]).max() <= 10 * tol


def test_analytic_constant_frequency_and_wronskian():
    assert aux_ode.constant_field_omega(CFG, 1.0, 1.0) == pytest.approx(np.sqrt(2))
    sol = aux_ode.analytic_constant(CFG, 1.0, 0.0, 0, 1)
    assert sol.W == pytest.approx(-2j, abs=1e-15)
    assert sol.is_normalized
    assert aux_ode.analytic_constant(CFG, 1.0, 0.0, 1, 0).W == pytest.approx(2j, abs=1e-15)


def test_analytic_constant_hyperbolic_continuation():
    w = aux_ode.constant_field_omega(CFG, 1.0, -3.0)
    assert w == pytest.approx(np.sqrt(2) * 1j)
    sol = aux_ode.analytic_constant(CFG, 1.0, -3.0, 0.5, 0.5j, span=(0, 2))
    num = aux_ode.solve(FieldProfile.linear_D(1.0, -3.0), CFG, 0, 2, f0=0.5 + 0.5j, f0_dot=sol.fdot[0], tol=1e-12)
    t = np.linspace(0, 2, 51)
    assert np.abs(num.evaluate(t)[0] - sol.evaluate(t)[0]).max() <= 1e-10


def test_analytic_constant_degenerate():
    with pytest.raises(ValueError):
        aux_ode.analytic_constant(CFG, 1.0, -1.0, 0, 1)


def test_normalize_rescales():
    sol = aux_ode.analytic_constant(CFG, 1.0, 0.0, 0, 2)
    assert sol.W == pytest.approx(-8j)
    out = aux_ode.normalize_wronskian(sol)
    assert out.W == pytest.approx(-2j, abs=1e-14)
    assert np.abs(out.evaluate(T)[0] - np.exp(1j * T)).max() <= 1e-14


def test_normalize_leaves_canonical_data_alone():
    sol = aux_ode.solve(FieldProfile.constant(1.0), CFG, 0, 1)
    assert aux_ode.normalize_wronskian(sol) is sol


def test_normalize_rejects_real_solution():
    sol = aux_ode.solve(FieldProfile.constant(0.0), CFG, 0, 1, f0=1, f0_dot=0)
    with pytest.raises(WronskianError, match="W = 0"):
        aux_ode.normalize_wronskian(sol)


def test_normalize_rejects_wrong_branch():
    sol = aux_ode.analytic_constant(CFG, 1.0, 0.0, 1, 0)
    with pytest.raises(WronskianError, match="conjugate"):
        aux_ode.normalize_wronskian(sol)


def test_context_at_landau():
    sol = aux_ode.analytic_constant(CFG, 1.0, 0.0, 0, 1)
    c0 = aux_ode.context_at(sol, 0.0)
    assert c0.f1 == pytest.approx(1) and c0.f2_a_star == pytest.approx(1j)
    cpi = aux_ode.context_at(sol, np.pi)
    assert cpi.omega == pytest.approx(np.pi)
    assert cpi.f1 == pytest.approx(1, abs=1e-14)


def test_context_free_case():
    sol = aux_ode.solve(FieldProfile.constant(0.0), CFG, 0, 1, f0=1, f0_dot=0)
    ctx = aux_ode.context_at(sol, 0.5)
    assert ctx.f1 == 1 and ctx.f2_a_star == 0


def test_context_out_of_span():
    sol = aux_ode.solve(FieldProfile.constant(1.0), CFG, 0, 1)
    with pytest.raises(SpanError):
        aux_ode.context_at(sol, 1.5)


def test_solve_rejects_bad_input():
    with pytest.raises(ValueError):
        aux_ode.solve(FieldProfile.constant(1.0), CFG, 1, 0)
    with pytest.raises(ValueError):
        aux_ode.solve(FieldProfile.constant(1.0), CFG, 0, 1, f0=0, f0_dot=0)
    tab = FieldProfile.tabulated([0, 1, 2, 3, 4], [1] * 5, [0] * 5)
    with pytest.raises(SpanError):
        aux_ode.solve(tab, CFG, 0, 5)


def test_omega_starts_from_time_zero():
    prof = FieldProfile.sinusoidal(1.0, 0.5, 1.0, 0.0, 0.0)
    sol = aux_ode.solve(prof, CFG, 2.0, 3.0, tol=1e-12)
    # Omega(t) = t + 0.5 (1 - cos t)
    assert sol.evaluate(3.0)[2] == pytest.approx(3 + 0.5 * (1 - np.cos(3.0)), abs=1e-10)


def test_im_fdot_over_f_is_inverse_modulus_squared(sinus_sol):
    assert sinus_sol.is_normalized
    f, fd = sinus_sol.f, sinus_sol.fdot
    np.testing.assert_allclose((fd / f).imag * np.abs(f) ** 2, 1.0, atol=1e-9)


@given(Bm=st.floats(0.5, 1.5), Ba=st.floats(0, 0.6), w=st.floats(0.2, 3), Da=st.floats(0, 0.5))
@settings(max_examples=15, deadline=None)
def test_wronskian_drift_bounded(Bm, Ba, w, Da):
    tol = 1e-10
    sol = aux_ode.solve(FieldProfile.sinusoidal(Bm, Ba, w, 0.0, Da), CFG, 0, 10, tol=tol)
    assert aux_ode.wronskian_drift(sol) <= 100 * tol


@pytest.mark.parametrize("prof", [
    FieldProfile.sinusoidal(1.0, 0.5, 1.0, 0.3, 0.4),
    FieldProfile.linear_D(1.0, 0.7),
    FieldProfile.tabulated(np.linspace(0, 5, 51), 1 + 0.2 * np.linspace(0, 5, 51), np.sin(np.linspace(0, 5, 51))),
])
def test_first_f1_equation_holds(prof):
    sol = aux_ode.solve(prof, CFG, 0, 5, tol=1e-11)
    assert np.abs(aux_ode.f1_equation_residual(sol)).max() <= 1e-10


def test_csv_dump(tmp_path, sinus_sol):
    path = tmp_path / "aux.csv"
    sinus_sol.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,Re_f,Im_f,Re_fdot,Im_fdot,Omega,Re_W,Im_W"
    assert len(lines) == len(sinus_sol.t) + 1
