"""Phase-estimation outcome distribution over a grid of eigenphases."""

import argparse

import numpy as np

from walkqc.algorithms import eigen_phase_coin, run_phase_estimation
from walkqc.walkops import PAULI_X


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=17)
    args = ap.parse_args()
    print(f"{'phi':>7} {'mode':>5} {'p(mode)':>8}   p(0) p(1/4) p(1/2) p(3/4)")
    for phi in np.linspace(0, 1, args.points, endpoint=False):
        est = run_phase_estimation(eigen_phase_coin(phi), PAULI_X)
        dist = " ".join(f"{est.distribution[k]:.3f}" for k in (0, 0.25, 0.5, 0.75))
        print(f"{phi:7.4f} {est.phi_estimate:5.2f} {est.probability:8.4f}   {dist}")


if __name__ == "__main__":
    main()
