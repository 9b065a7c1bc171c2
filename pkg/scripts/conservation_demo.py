"""Propagate a random superposition and report drifts of the integrals of motion.

    python3 scripts/conservation_demo.py --seed 7 --out trajectory.csv
"""

import argparse

import numpy as np

from susy_pauli import aux_ode
from susy_pauli.fields import FieldProfile, PhysicalConfig
from susy_pauli.grid import SpinorField
from susy_pauli.propagator import PropagationRun, run
from susy_pauli.solutions import EigenState, QuantumNumbers, recommended_grid


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--t1", type=float, default=2.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--D-amp", type=float, default=0.0, help="amplitude of the oscillating D(t)")
    p.add_argument("--out", default=None, help="optional trajectory CSV")
    args = p.parse_args()

    prof = FieldProfile.sinusoidal(1.0, 0.5, 1.0, 0.0, args.D_amp)
    sol = aux_ode.solve(prof, PhysicalConfig(), 0.0, args.t1, tol=1e-12)
    qns = [QuantumNumbers(1, 0, -0.5), QuantumNumbers(0, -1, 0.5), QuantumNumbers(1, -1, 0.5)]
    spec = max((recommended_grid(q, sol, (0.0, args.t1)) for q in qns), key=lambda g: (g.N, g.L))
    rng = np.random.default_rng(args.seed)
    c = rng.normal(size=len(qns)) + 1j * rng.normal(size=len(qns))
    c /= np.linalg.norm(c)
    psi = SpinorField.zeros(spec, 0.0)
    for ci, q in zip(c, qns):
        psi = psi + EigenState(q, sol, spec)(0.0) * ci

    rep = run(PropagationRun(psi, prof, sol, args.t1, args.dt, stride=100))
    print(f"grid N={spec.N} L={spec.L:.2f}, {len(rep.times)} samples")
    for name, d in rep.drifts.items():
        print(f"  {name:7s} max drift {d:.3e}")
    if args.out:
        rep.to_csv(args.out)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
