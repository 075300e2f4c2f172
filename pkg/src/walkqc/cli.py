"""Command-line entry point.

Every subcommand prints a versioned JSON report and exits 0 when all of its
checks pass, 1 when a check fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__, algorithms, costs, oracle, qec
from .gates import (
    CNOT,
    CompileDiscrepancy,
    GateSpec,
    H,
    P,
    cnot_case,
    compile_gate,
    construction_id,
    discrepancy_records,
    parse_gate_list,
)
from .gates_alt import alt_compile_gate, alt_discrepancy_records
from .hilbert import Convention, InvalidArgument, init_state, make_layout
from .walkops import PAULI_X, concat, program_to_text, run_program

SCHEMA = "walkqc-report"
SCHEMA_VERSION = 1
GATE_TOL = 1e-10
PROB_TOL = 1e-10
SWEEP_PHASES = (math.pi / 4, math.pi / 2, math.pi)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# gate verification


def sweep_gates(n: int) -> list[GateSpec]:
    gates = [H(q) for q in range(1, n + 1)]
    gates += [P(q, phi) for q in range(1, n + 1) for phi in SWEEP_PHASES]
    gates += [CNOT(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    return gates


def check_gate(gate: GateSpec, layout, backend: str = "main") -> dict:
    compile_fn = alt_compile_gate if backend == "alt" else compile_gate
    entry = {"gate": str(gate), "construction": construction_id(gate, layout)}
    try:
        prog = compile_fn(gate, layout)
    except CompileDiscrepancy as exc:
        entry.update(passed=False, error=None, gamma=None, discrepancy=str(exc))
        return entry
    u = oracle.to_qubit_basis(oracle.program_to_matrix(prog, layout), layout)
    eq = oracle.equiv_up_to_phase(u, oracle.reference_gate_matrix(gate, layout.num_qubits), GATE_TOL)
    entry.update(passed=eq.equal, error=eq.error, gamma=eq.gamma)
    return entry


def verify_gates(n: int, backend: str = "main", convention: str = "gray") -> dict:
    layout = make_layout(n, Convention(convention))
    entries = [check_gate(g, layout, backend) for g in sweep_gates(n)]
    fired = sorted({cnot_case(*map(int, e["gate"].split()[1:]), layout)
                    for e in entries if e["gate"].startswith("CNOT")})
    return {
        "layout": layout.describe(),
        "backend": backend,
        "gates": entries,
        "passed": sum(e["passed"] for e in entries),
        "total": len(entries),
        "cnot_cases_fired": fired,
        "ok": all(e["passed"] for e in entries),
    }


# ----------------------------------------------------------------------------
# subcommands; each returns (ok, results, records)


def _records(records) -> list[dict]:
    return [r.as_dict() for r in records]


def cmd_verify(args) -> tuple[bool, dict, list]:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.n > oracle.MAX_ORACLE_QUBITS:
        raise UsageError(f"--n is limited to {oracle.MAX_ORACLE_QUBITS}")
    res = verify_gates(args.n, args.backend, args.convention)
    recs = list(discrepancy_records())
    if args.backend == "alt":
        recs += list(alt_discrepancy_records())
    return res["ok"], res, _records(recs)


def cmd_grover(args) -> tuple[bool, dict, list]:
    if args.iterations < 0:
        raise UsageError("--iterations must be >= 0")
    run = algorithms.run_grover(args.target, args.iterations)
    closed = [algorithms.grover_closed_form(t) for t in range(args.iterations + 1)]
    ok = all(abs(a - b) < PROB_TOL for a, b in zip(run.history, closed))
    prog = algorithms.grover_program(args.target, args.iterations)
    res = {
        "target": run.target,
        "iterations": run.iterations,
        "target_probability": run.success_probability,
        "history": run.history,
        "closed_form": closed,
        "probabilities": run.probabilities,
        "walk_time_steps": costs.walk_time_steps(prog),
    }
    return ok, res, _records(algorithms.algorithm_records())


def cmd_qft3(args) -> tuple[bool, dict, list]:
    if not 0 <= args.input < 8:
        raise UsageError("--input must be in 0..7")
    amps = algorithms.qft_output(args.input)
    expected = oracle.dft(3)[:, args.input]
    eq = oracle.equiv_up_to_phase(amps, expected, GATE_TOL)
    u = oracle.to_qubit_basis(oracle.program_to_matrix(algorithms.compile_qft3(), algorithms.LAYOUT3),
                              algorithms.LAYOUT3)
    meq = oracle.equiv_up_to_phase(u, oracle.dft(3), GATE_TOL)
    res = {
        "input": args.input,
        "output_ordering": "natural (qubit 1 most significant)",
        "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
        "probabilities": [float(abs(a) ** 2) for a in amps],
        "matches_dft_column": eq.equal,
        "matrix_matches_dft": meq.equal,
        "matrix_error": meq.error,
        "walk_time_steps": costs.walk_time_steps(algorithms.compile_qft3()),
    }
    return eq.equal and meq.equal, res, _records(algorithms.algorithm_records())


def cmd_qpe(args) -> tuple[bool, dict, list]:
    phi = args.phi % 1.0
    est = algorithms.run_phase_estimation(algorithms.eigen_phase_coin(phi), PAULI_X)
    nearest = round(4 * phi) % 4 / 4
    exact = abs(4 * phi - round(4 * phi)) < 1e-12
    if exact:
        ok = est.phi_estimate == nearest and abs(est.probability - 1) < PROB_TOL
    else:
        ok = est.phi_estimate == nearest
    res = {
        "phi": phi,
        "estimate": est.phi_estimate,
        "probability": est.probability,
        "distribution": {repr(k): v for k, v in sorted(est.distribution.items())},
        "exact_two_bit_fraction": exact,
        "register_readout": "phi~ = (q2 + 2 q3) / 4",
        "walk_time_steps": costs.walk_time_steps(costs.walk_artifact("qpe")),
    }
    return ok, res, _records(algorithms.algorithm_records())


def cmd_qec(args) -> tuple[bool, dict, list]:
    code = qec.get_code(args.code)
    errors = code.correctable if args.sweep else (qec.NO_ERROR,)
    result = qec.sweep(args.code, errors)
    res = {
        "code": code.name,
        "num_qubits": code.num_qubits,
        "errors": [str(e) for e in errors],
        "logical_states": list(qec.LOGICAL_TEST_STATES),
        "fidelity_by_error": result.by_error(),
        "worst_fidelity": result.worst,
        "passed": result.passed,
    }
    if code.name == "five-one":
        res["schedule"] = [[str(g) for g in col] for col in qec.FIVE_ONE_SCHEDULE]
        res["recovery_table"] = {"".join(map(str, s)): fix for s, fix in
                                 sorted(qec.five_one_recovery_table().items())}
    return result.passed, res, []


def cmd_cost(args) -> tuple[bool, dict, list]:
    if args.model == "both":
        models = ("walk", "circuit") if args.artifact in costs.WALK_ARTIFACTS else ("circuit",)
    else:
        models = (args.model,)
    rows = []
    for model in models:
        if model == "walk" and args.artifact not in costs.WALK_ARTIFACTS:
            raise UsageError(f"no walk program for artifact {args.artifact!r}")
        value = costs.achieved(model, args.artifact)
        target = costs.TARGETS.get((model, args.artifact))
        rows.append({"model": model, "artifact": args.artifact, "time_steps": value,
                     "target": target, "reached": target is None or value == target,
                     "space": 1 if model == "walk" else costs.CIRCUITS[args.artifact]().space})
    res = {
        "rows": rows,
        "convention": costs.CALIBRATED.flags(),
        "calibration": [{"convention": c.name, "flags": c.flags(), "targets_reached": hits}
                        for c, hits in costs.calibrate()],
    }
    return all(r["reached"] for r in rows), res, []


def cost_table(results: dict) -> str:
    lines = [f"{'model':8} {'artifact':10} {'steps':>6} {'target':>6} {'space':>5}"]
    for r in results["rows"]:
        t = "-" if r["target"] is None else r["target"]
        lines.append(f"{r['model']:8} {r['artifact']:10} {r['time_steps']:>6} {t!s:>6} {r['space']:>5}")
    return "\n".join(lines)


PROGRAMS: dict[str, Callable] = {
    "grover": lambda: algorithms.grover_program("011"),
    "qft3": algorithms.compile_qft3,
    "qpe": lambda: costs.walk_artifact("qpe"),
    "cswap": algorithms.controlled_swap,
    "bitflip-encode": qec.bitflip_encode,
    "bitflip-decode": qec.bitflip_decode,
    "phaseflip-encode": qec.phaseflip_encode,
    "phaseflip-decode": qec.phaseflip_decode,
    "five-one-encode": qec.five_one_encode,
    "five-one-decode": qec.five_one_decode,
}


def cmd_dump(args) -> tuple[bool, dict, list]:
    if args.gates:
        if args.n is None:
            raise UsageError("--gates needs --n")
        with open(args.gates) as fh:
            gate_list = parse_gate_list(fh.read())
        layout = make_layout(args.n, Convention(args.convention))
        compile_fn = alt_compile_gate if args.backend == "alt" else compile_gate
        try:
            parts = [compile_fn(g, layout) for g in gate_list]
        except CompileDiscrepancy as exc:
            return False, {"error": str(exc)}, []
        prog = concat(parts, name=args.gates)
    else:
        if args.program not in PROGRAMS:
            raise UsageError(f"--program must be one of {sorted(PROGRAMS)}")
        prog = PROGRAMS[args.program]()
        layout = make_layout(5 if args.program.startswith("five") else 3)
    res: dict = {"layout": layout.describe(), "name": prog.name}
    if args.what == "program":
        res["text"] = program_to_text(prog)
    elif args.what == "matrix":
        res["matrix"] = oracle.matrix_dump(oracle.program_to_matrix(prog, layout))
    else:
        res["state"] = run_program(init_state(layout), prog).dump()
    res["walk_time_steps"] = costs.walk_time_steps(prog)
    return True, res, []


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkqc", description="Single-walker quantum computation toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("main", "alt"), default="main")
    common.add_argument("--output", help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-gates", parents=[common], help="oracle-check every H, P and CNOT on N qubits")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--convention", choices=("gray", "binary"), default="gray")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grover", parents=[common], help="three-qubit Grover search")
    p.add_argument("--target", default="011")
    p.add_argument("--iterations", type=int, default=algorithms.GROVER_ITERATIONS)
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("qft3", parents=[common], help="three-qubit QFT on a basis input")
    p.add_argument("--input", type=int, default=0)
    p.set_defaults(func=cmd_qft3)

    p = sub.add_parser("qpe", parents=[common], help="phase estimation with a two-qubit register")
    p.add_argument("--phi", type=float, required=True, help="phase as a fraction of 2 pi")
    p.set_defaults(func=cmd_qpe)

    p = sub.add_parser("qec", parents=[common], help="error-correction sweeps")
    p.add_argument("--code", choices=qec.CODE_NAMES, required=True)
    p.add_argument("--sweep", action="store_true", help="inject every correctable single error")
    p.set_defaults(func=cmd_qec)

    p = sub.add_parser("cost", parents=[common], help="time and space costs")
    p.add_argument("--artifact", choices=sorted(costs.CIRCUITS), required=True)
    p.add_argument("--model", choices=("walk", "circuit", "both"), default="both")
    p.add_argument("--table", action="store_true", help="print a text table instead of JSON")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("dump-program", parents=[common], help="print a program, its matrix or its output state")
    p.add_argument("--program", default="qft3", help=", ".join(sorted(PROGRAMS)))
    p.add_argument("--gates", help="gate-list file to compile instead of a named program")
    p.add_argument("--n", type=int)
    p.add_argument("--convention", choices=("gray", "binary"), default="gray")
    p.add_argument("--what", choices=("program", "matrix", "state"), default="program")
    p.set_defaults(func=cmd_dump)
    return parser


def make_report(command: str, argv: Sequence[str], ok: bool, results: dict,
                records: list, elapsed: float) -> dict:
    return {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "command": command,
        "argv": list(argv),
        "ok": ok,
        "results": results,
        "tolerances": {"gate": GATE_TOL, "probability": PROB_TOL, "fidelity": qec.FIDELITY_TOL},
        "discrepancy_records": records,
        "timings": {"seconds": elapsed},
    }


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    try:
        ok, results, records = args.func(args)
    except (UsageError, InvalidArgument, OSError) as exc:
        print(f"walkqc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = make_report(args.command, argv, ok, results, records, time.perf_counter() - start)
    text = json.dumps(report, indent=2, default=_default)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if getattr(args, "table", False):
        print(cost_table(results))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
