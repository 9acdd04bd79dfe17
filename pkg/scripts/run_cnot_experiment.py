#!/usr/bin/env python3
"""Reproduce the correlated-CNOT scenario end to end.

For a chosen correlation parameter r0, evolves the joint two-qubit state
numerically over a time grid, checks the analytic reduced state and
inhomogeneous term against the numerics, builds the analytic Kraus pair at
each time, and prints a residual summary.  The point of the exercise: the
inhomogeneous term is visibly nonzero, yet a valid two-operator Kraus set
connects the initial and evolved reduced states at every t.
"""

import argparse

import numpy as np

import krauslab as kl
from krauslab.kraus import apply_kraus_raw
from krauslab.linalg import norm_max


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--r0", type=float, default=0.5)
    parser.add_argument("--steps", type=int, default=65)
    parser.add_argument("--t-max", type=float, default=np.pi)
    args = parser.parse_args()

    sc = kl.CnotScenario(args.r0)
    h = kl.cnot_hamiltonian()
    joint = sc.initial_joint()
    rho0 = sc.initial_reduced()

    worst_state = worst_delta = worst_kraus = 0.0
    max_delta_norm = 0.0
    for t in np.linspace(0.0, args.t_max, args.steps):
        numeric = kl.reduced_state(kl.evolve_joint(h, joint, t)).mat
        worst_state = max(worst_state, norm_max(numeric - kl.cnot_analytic_rho(sc, t).mat))
        d_num = kl.delta_rho(h, joint, t)
        worst_delta = max(worst_delta, norm_max(d_num - kl.cnot_analytic_delta_rho(sc, t)))
        max_delta_norm = max(max_delta_norm, norm_max(d_num))
        k = kl.cnot_analytic_kraus(sc, t)
        worst_kraus = max(
            worst_kraus,
            k.completeness_residual(),
            norm_max(apply_kraus_raw(k, rho0.mat) - numeric),
        )

    print(f"r0 = {args.r0}, {args.steps} points on [0, {args.t_max:.6g}]")
    print(f"max |analytic - numeric| reduced state:     {worst_state:.3e}")
    print(f"max |analytic - numeric| inhomogeneous term: {worst_delta:.3e}")
    print(f"max inhomogeneous-term norm over grid:       {max_delta_norm:.3e}")
    print(f"worst Kraus completeness/reconstruction:     {worst_kraus:.3e}")
    print("Kraus representation exists at every grid point despite the nonzero term."
          if worst_kraus <= 1e-9 else "WARNING: Kraus residuals above 1e-9")


if __name__ == "__main__":
    main()
