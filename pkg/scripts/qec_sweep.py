"""Single-error sweeps of the three codes, plus errors they are not meant to fix."""

from walkqc import qec


def show(name, errors=None):
    res = qec.sweep(name, errors)
    worst = res.by_error()
    print(f"{name}: worst fidelity {res.worst:.12f} over {len(res.runs)} runs")
    print("  " + "  ".join(f"{k}:{v:.3f}" for k, v in worst.items()))


def main():
    for name in qec.CODE_NAMES:
        show(name)
    print("\noutside the correctable set:")
    show("bitflip", qec.single_errors(3, "Z")[1:])
    show("phaseflip", qec.single_errors(3, "X")[1:])
    code = qec.get_code("five-one")
    two = (qec.PauliError(1, "X"), qec.PauliError(2, "X"))
    worst = min(qec.run_code(code, v, two).fidelity for v in qec.LOGICAL_TEST_STATES.values())
    print(f"five-one with X1+X2: worst fidelity {worst:.3f}")
    print("\nfive-one recovery table (syndrome on qubits 2-5 -> coin Pauli):")
    for s, fix in sorted(qec.five_one_recovery_table().items()):
        print(f"  {''.join(map(str, s))} -> {fix}")


if __name__ == "__main__":
    main()
