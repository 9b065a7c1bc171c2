"""Step-size convergence of the RK4 propagator against an exact eigenstate.

    python3 scripts/convergence_study.py --n 1 --m 0 --s -0.5 --t1 2
"""

import argparse
import time

import numpy as np

from susy_pauli import aux_ode
from susy_pauli.fields import FieldProfile, PhysicalConfig
from susy_pauli.propagator import propagate, stability_bound
from susy_pauli.solutions import EigenState, QuantumNumbers, recommended_grid


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--s", type=float, default=-0.5)
    p.add_argument("--t1", type=float, default=2.0)
    p.add_argument("--dts", type=float, nargs="+", default=[4e-3, 2e-3, 1e-3, 5e-4])
    args = p.parse_args()

    cfg = PhysicalConfig()
    prof = FieldProfile.sinusoidal(1.0, 0.5, 1.0, 0.0, 0.0)
    sol = aux_ode.solve(prof, cfg, 0.0, args.t1, tol=1e-12)
    qn = QuantumNumbers(args.n, args.m, args.s)
    spec = recommended_grid(qn, sol, (0.0, args.t1))
    st = EigenState(qn, sol, spec)
    print(f"{qn} on N={spec.N} L={spec.L:.2f}; RK4 stability bound {stability_bound(spec, prof, cfg, 0, args.t1):.2e}")
    prev = None
    for dt in args.dts:
        t0 = time.perf_counter()
        err = (propagate(st(0.0), prof, cfg, args.t1, dt) - st(args.t1)).norm()
        order = "" if prev is None else f"  order {np.log2(prev / err):.2f}"
        print(f"dt={dt:.1e}  L2 error {err:.3e}  ({time.perf_counter() - t0:.1f} s){order}")
        prev = err


if __name__ == "__main__":
    main()
