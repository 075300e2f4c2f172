"""Success probability per Grover iteration for every target, against the closed form."""

import argparse
import itertools

from walkqc.algorithms import grover_closed_form, grover_program, run_grover
from walkqc.costs import walk_time_steps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iterations", type=int, default=4)
    args = ap.parse_args()
    header = " ".join(f"t={t:<7}" for t in range(args.iterations + 1))
    print(f"target  {header}")
    for bits in itertools.product("01", repeat=3):
        target = "".join(bits)
        run = run_grover(target, args.iterations)
        print(f"{target}     " + " ".join(f"{p:<9.6f}" for p in run.history))
    print("closed  " + " ".join(f"{grover_closed_form(t):<9.6f}" for t in range(args.iterations + 1)))
    print(f"walk steps for two iterations: {walk_time_steps(grover_program('011', 2))}")


if __name__ == "__main__":
    main()
