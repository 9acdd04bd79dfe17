#!/usr/bin/env python3
"""Stress the universal qubit Kraus construction on random state pairs.

Samples Ginibre-random qubit pairs (full-rank, rank-deficient, and the
maximally mixed state), builds the connecting Kraus set, and reports the
worst completeness, reconstruction, and Choi-positivity residuals.
"""

import argparse

import numpy as np

import krauslab as kl


def random_density(rng, rank):
    g = rng.normal(size=(2, rank)) + 1j * rng.normal(size=(2, rank))
    m = g @ g.conj().T
    return kl.validate_density(m / np.trace(m).real)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    worst_comp = worst_rec = 0.0
    worst_choi = 0.0
    pool = [kl.validate_density(np.eye(2) / 2)]
    for i in range(args.samples):
        rho0 = pool[i] if i < len(pool) else random_density(rng, int(rng.integers(1, 3)))
        rhot = random_density(rng, int(rng.integers(1, 3)))
        rep = kl.verify_channel(kl.general_qubit_kraus(rho0, rhot), rho0, rhot)
        worst_comp = max(worst_comp, rep.completeness_residual)
        worst_rec = max(worst_rec, rep.reconstruction_residual)
        worst_choi = min(worst_choi, rep.choi_min_eigenvalue)

    print(f"{args.samples} pairs, seed {args.seed}")
    print(f"worst completeness residual:   {worst_comp:.3e}")
    print(f"worst reconstruction residual: {worst_rec:.3e}")
    print(f"worst Choi minimum eigenvalue: {worst_choi:.3e}")


if __name__ == "__main__":
    main()
