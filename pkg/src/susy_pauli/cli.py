"""Command-line front end.

Exit codes: 0 all checks within tolerance, 1 verification failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import aux_ode
from .config import ConfigError, RunConfig, load, parse_complex
from .fields import FieldProfile, PhysicalConfig
from .grid import GridSpec, SpinorField, inner
from .operators import OperatorError, OperatorKind as K
from .operators import anticommutator_residual, apply, commutator_residual, probe_field, q_of_minus_B_check
from .propagator import PropagationRun, run as run_propagation
from .solutions import EigenState, PoleError, QuantumNumbers, pauli_residual, recommended_grid
from .symbolic import format_report, verify_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
STENCIL_DT = 1e-3


# shared builders --------------------------------------------------------------

def build_profile(cfg: RunConfig) -> FieldProfile:
    p = cfg.profile
    if p.kind == "constant":
        return FieldProfile.constant(p.B0, p.D0)
    if p.kind == "linear_D":
        return FieldProfile.linear_D(p.B0, p.D_rate)
    if p.kind == "sinusoidal":
        return FieldProfile.sinusoidal(p.B_mean, p.B_amp, p.omega_drive, p.D_mean, p.D_amp)
    if p.kind == "tabulated":
        return FieldProfile.from_csv(p.table)
    raise ConfigError(f"profile.kind must be constant, linear_D, sinusoidal or tabulated, got {p.kind!r}")


def build_aux(cfg: RunConfig, profile: FieldProfile, tol_scale: float = 1.0) -> aux_ode.AuxSolution:
    o = cfg.ode
    f0 = 1.0 if o.f0 == "canonical" else parse_complex(o.f0)
    fd = 1j if o.f0_dot == "canonical" else parse_complex(o.f0_dot)
    sol = aux_ode.solve(profile, PhysicalConfig(cfg.physical.e), cfg.time.t0, cfg.time.t1, f0, fd, o.tol * tol_scale)
    return aux_ode.normalize_wronskian(sol)


def build_grid(cfg: RunConfig, qns, sol) -> GridSpec:
    if cfg.grid.N != "auto" and cfg.grid.L != "auto":
        return GridSpec(int(float(cfg.grid.N)), float(cfg.grid.L))
    if not qns:
        auto = GridSpec(64, 20.0)
    else:
        auto = max((recommended_grid(q, sol) for q in qns), key=lambda g: (g.N, g.L))
    N = auto.N if cfg.grid.N == "auto" else int(float(cfg.grid.N))
    L = auto.L if cfg.grid.L == "auto" else float(cfg.grid.L)
    return GridSpec(N, L)


def state_numbers(cfg: RunConfig) -> QuantumNumbers:
    s = cfg.state
    return QuantumNumbers(s.n, s.m, s.s)


def superposition_numbers(cfg: RunConfig) -> list[QuantumNumbers]:
    raw = cfg.state.superposition.strip()
    if not raw:
        return [state_numbers(cfg)]
    out = []
    for chunk in raw.split(";"):
        parts = [x for x in chunk.replace("(", " ").replace(")", " ").replace(",", " ").split() if x]
        if len(parts) != 3:
            raise ConfigError(f"state.superposition entries are 'n,m,s', got {chunk!r}")
        out.append(QuantumNumbers(int(parts[0]), int(parts[1]), float(parts[2])))
    return out


def _fmt(x: float) -> str:
    return repr(float(x))


def _spin_label(s: float) -> str:
    return "up" if s > 0 else "down"


# subcommands --------------------------------------------------------------------

def cmd_verify_algebra(cfg, args, out: Path) -> int:
    results = verify_suite()
    text = format_report(results)
    (out / "algebra_report.txt").write_text(text + "\n")
    (out / "algebra_report.jsonl").write_text("".join(r.to_json() + "\n" for r in results))
    print(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_solve_ode(cfg, args, out: Path) -> int:
    cfg.require("profile", "time", "ode")
    profile = build_profile(cfg)
    sol = build_aux(cfg, profile, args.tol_scale)
    path = out / "aux_trajectory.csv"
    sol.to_csv(path)
    drift = aux_ode.wronskian_drift(sol)
    limit = 100 * cfg.ode.tol * args.tol_scale
    ok = drift <= limit
    f1res = float(np.abs(aux_ode.f1_equation_residual(sol)).max())
    print(f"nodes={len(sol.t)}  W(t0)={sol.W:.12g}  max|W(t)-W(t0)|={drift:.3e} (limit {limit:.1e})  "
          f"max|f1 equation|={f1res:.3e}")
    print(f"wrote {path}")
    return EXIT_OK if ok and f1res <= 1e-10 * args.tol_scale else EXIT_FAIL


def operator_checks(field: SpinorField, ctx, tol_scale: float = 1.0, partner_seed: int = 1000):
    """(name, residual, tolerance) for every grid identity at one instant; needs an auxiliary solution."""
    norm = field.norm()
    W = ctx.W if ctx.W is not None else -2j
    e, a, f1, F = ctx.e, ctx.a, ctx.f1, ctx.f2_a_star  # F = f2 conj(a)
    mixed_m = 1j * e * (f1 * a - F)
    mixed_p = -1j * e * (np.conj(f1) * np.conj(a) - np.conj(F))
    tilde = 1j * e * (f1 * np.conj(F) - np.conj(f1) * F)
    rows = [
        ("QTildePlus_nilpotent", apply(K.QTildePlus, apply(K.QTildePlus, field, ctx), ctx).norm() / norm, 1e-10),
        ("QTildeMinus_nilpotent", apply(K.QTildeMinus, apply(K.QTildeMinus, field, ctx), ctx).norm() / norm, 1e-10),
        ("superalgebra", anticommutator_residual(K.QTildePlus, K.QTildeMinus, [(1, K.HTilde)], field, ctx), 1e-8),
        ("pi_commutator", commutator_residual(K.PiMinus, K.PiPlus, [(-2 * ctx.e * ctx.B, K.Identity)], field, ctx), 1e-9),
        ("pitilde_wronskian", commutator_residual(K.PiTildeMinus, K.PiTildePlus, [(1j * W, K.Identity)], field, ctx), 1e-9),
        ("pitilde_f1f2", commutator_residual(K.PiTildeMinus, K.PiTildePlus, [(tilde, K.Identity)], field, ctx), 1e-9),
        ("pitilde_minus_pi_plus", commutator_residual(K.PiTildeMinus, K.PiPlus, [(mixed_m, K.Identity)], field, ctx), 1e-9),
        ("pi_minus_pitilde_plus", commutator_residual(K.PiMinus, K.PiTildePlus, [(mixed_p, K.Identity)], field, ctx), 1e-9),
        ("pitilde_plus_Lz", commutator_residual(K.PiTildePlus, K.Lz, [(-1, K.PiTildePlus)], field, ctx), 1e-9),
        ("pitilde_minus_Lz", commutator_residual(K.PiTildeMinus, K.Lz, [(1, K.PiTildeMinus)], field, ctx), 1e-9),
        ("QTildePlus_Lz", commutator_residual(K.QTildePlus, K.Lz, [(1, K.QTildePlus)], field, ctx), 1e-9),
        ("QTildeMinus_Lz", commutator_residual(K.QTildeMinus, K.Lz, [(-1, K.QTildeMinus)], field, ctx), 1e-9),
        ("QTildePlus_Sz", commutator_residual(K.QTildePlus, K.Sz, [(-1, K.QTildePlus)], field, ctx), 1e-9),
        ("QTildeMinus_Sz", commutator_residual(K.QTildeMinus, K.Sz, [(1, K.QTildeMinus)], field, ctx), 1e-9),
        ("Jz_QTildePlus", commutator_residual(K.Jz, K.QTildePlus, [], field, ctx), 1e-9),
        ("Jz_QTildeMinus", commutator_residual(K.Jz, K.QTildeMinus, [], field, ctx), 1e-9),
        ("Lz_HTilde", commutator_residual(K.Lz, K.HTilde, [], field, ctx), 1e-8),
        ("Sz_HTilde", commutator_residual(K.Sz, K.HTilde, [], field, ctx), 1e-8),
        ("ladder_commutator", commutator_residual(K.BMinus, K.BPlus, [(1, K.Identity)], field, ctx), 1e-9),
        ("ladder_plus_Lz", commutator_residual(K.BPlus, K.Lz, [(-1, K.BPlus)], field, ctx), 1e-9),
        ("ladder_minus_Lz", commutator_residual(K.BMinus, K.Lz, [(1, K.BMinus)], field, ctx), 1e-9),
    ]
    a, b = field, probe_field(field.spec, partner_seed, field.t)
    adj = abs(inner(apply(K.PiTildePlus, a, ctx), b) - inner(a, apply(K.PiTildeMinus, b, ctx)))
    rows.append(("pitilde_adjoint", adj / (a.norm() * b.norm()), 1e-9))
    if ctx.profile is not None and ctx.profile.is_static_B and ctx.D == 0.0 and ctx.D_dot == 0.0:
        try:
            rows.append(("QTildePlus_opposite_field", q_of_minus_B_check(field, ctx), 1e-10))
        except OperatorError:
            pass
    return [(n, r, t * tol_scale) for n, r, t in rows]


def cmd_check_operators(cfg, args, out: Path) -> int:
    cfg.require("profile", "time")
    profile = build_profile(cfg)
    sol = build_aux(cfg, profile)
    spec = build_grid(cfg, [], sol)
    times = sorted({cfg.time.t0, cfg.time.t_eval})
    path = out / "operator_report.csv"
    ok = True
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["identity_name", "t", "residual", "tolerance", "pass"])
        for t in times:
            ctx = aux_ode.context_at(sol, t)
            for k in range(args.probes):
                field = probe_field(spec, args.seed + k, t)
                for name, r, tol in operator_checks(field, ctx, args.tol_scale, args.seed + 1000 + k):
                    passed = r <= tol
                    ok &= passed
                    w.writerow([f"{name}[probe{k}]", _fmt(t), f"{r:.6e}", f"{tol:.1e}", "true" if passed else "false"])
    print(f"grid N={spec.N} L={spec.L:g}; {'all' if ok else 'NOT all'} identities within tolerance; wrote {path}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen_state(cfg, args, out: Path) -> int:
    cfg.require("profile", "time", "state")
    qn = state_numbers(cfg)
    profile = build_profile(cfg)
    sol = build_aux(cfg, profile)
    spec = build_grid(cfg, [qn], sol)
    t = cfg.time.t_eval
    st = EigenState(qn, sol, spec)
    psi = st(t)
    tag = f"n{qn.n}_m{qn.m}_{_spin_label(qn.s)}"
    psi.save(out / f"state_{tag}.bin")
    norm = psi.norm()
    res = pauli_residual(st, t, STENCIL_DT)
    with open(out / f"state_{tag}.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "m", "s", "t", "energy", "norm", "pauli_residual"])
        w.writerow([qn.n, qn.m, qn.s, _fmt(t), _fmt(qn.energy), _fmt(norm), f"{res:.6e}"])
    ok = abs(norm - 1) <= 1e-7 * args.tol_scale and res <= 1e-5 * args.tol_scale
    print(f"|{qn.n},{qn.m},{qn.s:+g}> at t={t:g}: energy={qn.energy:g} norm={norm:.12f} "
          f"pauli_residual={res:.3e} grid N={spec.N} L={spec.L:.4g}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_residual(cfg, args, out: Path) -> int:
    cfg.require("profile", "time", "state")
    qn = state_numbers(cfg)
    profile = build_profile(cfg)
    sol = build_aux(cfg, profile)
    spec = build_grid(cfg, [qn], sol)
    st = EigenState(qn, sol, spec)
    margin = 2 * STENCIL_DT
    ts = np.linspace(cfg.time.t0 + margin, cfg.time.t1 - margin, cfg.time.samples)
    ok = True
    path = out / "residual.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "pauli_residual", "norm"])
        for t in ts:
            r = pauli_residual(st, float(t), STENCIL_DT)
            nrm = st(float(t)).norm()
            ok &= r <= 1e-5 * args.tol_scale and abs(nrm - 1) <= 1e-7 * args.tol_scale
            w.writerow([_fmt(t), f"{r:.6e}", _fmt(nrm)])
            print(f"t={t:.4f}  residual={r:.3e}  norm-1={nrm - 1:+.2e}")
    return EXIT_OK if ok else EXIT_FAIL


CONSERVATION_LIMITS = {"norm": 1e-8, "Htilde": 1e-6, "Lz": 1e-6, "Qp": 1e-6, "Qm": 1e-6}


def cmd_propagate(cfg, args, out: Path) -> int:
    cfg.require("profile", "time", "state")
    qns = superposition_numbers(cfg)
    profile = build_profile(cfg)
    sol = build_aux(cfg, profile)
    spec = build_grid(cfg, qns, sol)
    t0, t1 = cfg.time.t0, cfg.time.t1
    states = [EigenState(q, sol, spec) for q in qns]
    if len(states) == 1:
        coeffs = np.array([1.0 + 0j])
    else:
        rng = np.random.default_rng(args.seed)
        coeffs = rng.normal(size=len(states)) + 1j * rng.normal(size=len(states))
        coeffs /= np.linalg.norm(coeffs)
    psi0 = SpinorField.zeros(spec, t0)
    for c, st in zip(coeffs, states):
        psi0 = psi0 + st(t0) * c
    rep = run_propagation(PropagationRun(psi0, profile, sol, t1, cfg.time.dt, stride=cfg.time.stride))
    rep.to_csv(out / "trajectory.csv")
    lines, ok = [], True
    for name, limit in CONSERVATION_LIMITS.items():
        d = rep.drift(name)
        passed = d <= limit * args.tol_scale
        ok &= passed
        lines.append(f"{name:8s} max drift {d:.3e}  limit {limit * args.tol_scale:.1e}  {'pass' if passed else 'FAIL'}")
    exact = SpinorField.zeros(spec, rep.final.t)
    for c, st in zip(coeffs, states):
        exact = exact + st(rep.final.t) * c
    err = (rep.final - exact).norm()
    passed = err <= 1e-4 * args.tol_scale
    ok &= passed
    lines.append(f"L2 error vs generated solution at t={rep.final.t:g}: {err:.3e}  limit {1e-4 * args.tol_scale:.1e}  "
                 f"{'pass' if passed else 'FAIL'}")
    text = "\n".join(lines)
    (out / "conservation_report.txt").write_text(text + "\n")
    print(text)
    return EXIT_OK if ok else EXIT_FAIL


def spectrum_rows(n_max: int):
    """(n, s, energy, degeneracy, note) for every n <= n_max."""
    rows = []
    for n in range(n_max + 1):
        for s in (-0.5, 0.5):
            E = n + s + 0.5
            if E == 0:
                rows.append((n, s, E, 1, "unique zero mode"))
            else:
                partner = (n - 1, 0.5) if s < 0 else (n + 1, -0.5)
                rows.append((n, s, E, 2, f"partner (n={partner[0]}, s={partner[1]:+g})"))
    return rows


def cmd_spectrum(cfg, args, out: Path) -> int:
    rows = spectrum_rows(args.n_max)
    path = out / "spectrum.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "s", "energy", "degeneracy", "note"])
        for n, s, E, d, note in rows:
            w.writerow([n, s, _fmt(E), d, note])
    print(f"{'n':>3} {'s':>5} {'E':>6}  degeneracy")
    for n, s, E, d, note in sorted(rows, key=lambda r: (r[2], r[1])):
        print(f"{n:>3} {s:>+5g} {E:>6g}  x{d}  {note}")
    return EXIT_OK


COMMANDS = {
    "verify-algebra": (cmd_verify_algebra, "exact symbolic identity suite"),
    "solve-ode": (cmd_solve_ode, "auxiliary solution f(t) and its CSV trajectory"),
    "check-operators": (cmd_check_operators, "grid operator identity report"),
    "gen-state": (cmd_gen_state, "eigenstate snapshot and metadata"),
    "residual": (cmd_residual, "Pauli residual sweep over time"),
    "propagate": (cmd_propagate, "numerical propagation with conservation report"),
    "spectrum": (cmd_spectrum, "eigenvalue table with degeneracies"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="susy-pauli", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("-c", "--config", help="flat 'section.key = value' config file")
        sp.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE", help="override a config key")
        sp.add_argument("--out-dir", help="output directory (default: output.dir)")
        sp.add_argument("--seed", type=int, default=0, help="seed for probe fields and superposition coefficients")
        sp.add_argument("--tol-scale", type=float, default=1.0, help="multiply every pass/fail tolerance")
        if name == "spectrum":
            sp.add_argument("--n-max", type=int, default=3)
        if name == "check-operators":
            sp.add_argument("--probes", type=int, default=5, help="number of seeded probe fields")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.tol_scale <= 0:
            raise ConfigError("--tol-scale must be positive")
        if getattr(args, "n_max", 0) < 0:
            raise ConfigError("--n-max must be >= 0")
        cfg = load(args.config, args.set)
        out = Path(args.out_dir or cfg.output.dir)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command][0](cfg, args, out)
    except PoleError as exc:
        print(f"error: {exc} (pole-freedom requires m - n <= 0)", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
