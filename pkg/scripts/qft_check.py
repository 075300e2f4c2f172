"""Compare the compiled three-qubit QFT with the DFT matrix, corrected and literal readings."""

import numpy as np

from walkqc import oracle
from walkqc.algorithms import LAYOUT3, compile_qft3, qft_output


def main():
    for literal in (False, True):
        u = oracle.to_qubit_basis(oracle.program_to_matrix(compile_qft3(literal=literal), LAYOUT3), LAYOUT3)
        eq = oracle.equiv_up_to_phase(u, oracle.dft(3))
        label = "literal" if literal else "corrected"
        print(f"{label:9} unitary error {oracle.unitarity_error(u):.1e}  equals F8: {eq.equal}  "
              f"max deviation {eq.error:.2e}")
    print("\nQFT|5>, amplitudes in natural order:")
    for i, a in enumerate(qft_output(5)):
        print(f"  {i:03b}  {a.real:+.4f}{a.imag:+.4f}j  phase/2pi = {np.angle(a) / (2 * np.pi) % 1:.3f}")


if __name__ == "__main__":
    main()
