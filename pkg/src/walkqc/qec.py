"""Bit-flip, phase-flip and five-qubit codes on the walk, with error sweeps.

The logical qubit always lives on the coin.  Syndromes are handled
coherently: the decoder leaves them in the position register and a
position-dependent coin operation applies the recovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .gates import CNOT, GateSpec, H, TOFFOLI, compile_gate, compile_gate_sequence
from .hilbert import (
    InvalidArgument,
    Layout,
    WalkState,
    bits_to_position,
    make_layout,
    state_from_qubits,
    qubit_amplitudes,
)
from .walkops import Coin, PositionFilter, WalkProgram, coin_matrix, concat, run_program, select

PAULI_KINDS = ("I", "X", "Y", "Z")
FIDELITY_TOL = 1e-9

_PAULI_MATS = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PauliError:
    qubit: int
    kind: str

    def __post_init__(self):
        if self.kind not in PAULI_KINDS:
            raise InvalidArgument(f"Pauli kind must be one of {PAULI_KINDS}, got {self.kind!r}")
        if self.qubit < 1:
            raise InvalidArgument(f"bad qubit {self.qubit}")

    def __str__(self):
        return "I" if self.kind == "I" else f"{self.kind}{self.qubit}"


NO_ERROR = PauliError(1, "I")


@dataclass
class CodeRun:
    logical: np.ndarray = field(repr=False)
    errors: tuple[PauliError, ...]
    fidelity: float

    def __post_init__(self):
        if not -1e-12 <= self.fidelity <= 1 + 1e-12:
            raise InvalidArgument(f"fidelity {self.fidelity} outside [0, 1]")

    @property
    def label(self) -> str:
        return "+".join(str(e) for e in self.errors)


def error_program(e: PauliError, layout: Layout) -> WalkProgram:
    layout.check_qubit(e.qubit)
    if e.kind == "I":
        return WalkProgram(name="I")
    return compile_gate(GateSpec(e.kind, (e.qubit,)), layout)


def inject_pauli_error(state: WalkState, e: PauliError) -> WalkState:
    return run_program(state, error_program(e, state.layout))


def logical_state(layout: Layout, logical) -> WalkState:
    """Coin in ``logical`` (two amplitudes), every position qubit in |0>."""
    v = np.asarray(logical, dtype=np.complex128).reshape(2)
    v = v / np.linalg.norm(v)
    amps = np.zeros(layout.dim, dtype=np.complex128)
    half = layout.dim // 2
    amps[0], amps[half] = v
    return state_from_qubits(layout, amps)


def coin_fidelity(state: WalkState, logical) -> float:
    """<psi| rho_coin |psi> with the position register traced out."""
    v = np.asarray(logical, dtype=np.complex128).reshape(2)
    v = v / np.linalg.norm(v)
    amps = qubit_amplitudes(state).reshape(2, -1)
    rho = amps @ amps.conj().T
    return float(np.real(v.conj() @ rho @ v))


LOGICAL_TEST_STATES = {
    "0": (1, 0),
    "1": (0, 1),
    "+": (1 / math.sqrt(2), 1 / math.sqrt(2)),
    "-": (1 / math.sqrt(2), -1 / math.sqrt(2)),
    "+i": (1 / math.sqrt(2), 1j / math.sqrt(2)),
    "-i": (1 / math.sqrt(2), -1j / math.sqrt(2)),
}


# ----------------------------------------------------------------------------
# [3,1] codes


@dataclass(frozen=True)
class Code:
    name: str
    num_qubits: int
    encode: WalkProgram
    decode: WalkProgram
    # errors the code promises to correct
    correctable: tuple[PauliError, ...]

    @property
    def layout(self) -> Layout:
        return make_layout(self.num_qubits)


LAYOUT3 = make_layout(3)


def bitflip_encode(layout: Layout = LAYOUT3) -> WalkProgram:
    return compile_gate_sequence([CNOT(1, 2), CNOT(1, 3)], layout).named("bitflip-encode")


def bitflip_decode(layout: Layout = LAYOUT3) -> WalkProgram:
    return compile_gate_sequence([CNOT(1, 2), CNOT(1, 3), TOFFOLI(2, 3, 1)], layout).named("bitflip-decode")


def _hadamards(layout: Layout) -> WalkProgram:
    return compile_gate_sequence([H(1), H(2), H(3)], layout)


def phaseflip_encode(layout: Layout = LAYOUT3) -> WalkProgram:
    return concat([bitflip_encode(layout), _hadamards(layout)], name="phaseflip-encode")


def phaseflip_decode(layout: Layout = LAYOUT3) -> WalkProgram:
    return concat([_hadamards(layout), bitflip_decode(layout)], name="phaseflip-decode")


# ----------------------------------------------------------------------------
# [5,1] code
#
# Encoder columns (logical qubit 1, ancillas 2-5 start in |0>):
#   H2 H3 H4 H5 | CZ(1,4) CZ(1,2) | CNOT(5,3) CNOT(5,1) | CZ(3,4) CZ(3,1) | CNOT(2,3) CNOT(2,1)
# Each later column is a twin gate: two gates sharing a control.  The
# decoder runs the encoder backwards; every single-qubit Pauli then leaves a
# distinct nonzero pattern on qubits 2-5 and a known Pauli on the coin.

FIVE_ONE_SCHEDULE: tuple[tuple[GateSpec, ...], ...] = (
    (H(2), H(3), H(4), H(5)),
    (GateSpec("CZ", (1, 4), values=(1, 1)), GateSpec("CZ", (1, 2), values=(1, 1))),
    (CNOT(5, 3), CNOT(5, 1)),
    (GateSpec("CZ", (3, 4), values=(1, 1)), GateSpec("CZ", (3, 1), values=(1, 1))),
    (CNOT(2, 3), CNOT(2, 1)),
)

LAYOUT5 = make_layout(5)


def five_one_gates() -> list[GateSpec]:
    return [g for col in FIVE_ONE_SCHEDULE for g in col]


def propagate_pauli(gates: Sequence[GateSpec], n: int, e: PauliError) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(x, z) bits of ``U^dag E U`` for the Clifford circuit ``U`` (phase dropped)."""
    x = [0] * (n + 1)
    z = [0] * (n + 1)
    if e.kind in ("X", "Y"):
        x[e.qubit] = 1
    if e.kind in ("Z", "Y"):
        z[e.qubit] = 1
    for g in reversed(list(gates)):
        q = g.qubits
        if g.kind == "H":
            x[q[0]], z[q[0]] = z[q[0]], x[q[0]]
        elif g.kind == "CNOT":
            c, t = q
            x[t] ^= x[c]
            z[c] ^= z[t]
        elif g.kind == "CZ":
            a, b = q
            z[a] ^= x[b]
            z[b] ^= x[a]
        else:
            raise InvalidArgument(f"{g.kind} is not in the Clifford set used here")
    return tuple(x[1:]), tuple(z[1:])


def _kind(x: int, z: int) -> str:
    return {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(x, z)]


@lru_cache(maxsize=None)
def five_one_recovery_table() -> dict[tuple[int, ...], str]:
    """Syndrome on qubits 2-5 -> Pauli to undo on the coin."""
    gates = five_one_gates()
    table: dict[tuple[int, ...], str] = {}
    for q in range(1, 6):
        for kind in "XYZ":
            x, z = propagate_pauli(gates, 5, PauliError(q, kind))
            syndrome = x[1:]
            fix = _kind(x[0], z[0])
            if not any(syndrome) or table.get(syndrome, fix) != fix:
                raise RuntimeError(f"{kind}{q}: syndrome {syndrome} is not unique")
            table[syndrome] = fix
    return table


def five_one_encode(layout: Layout = LAYOUT5) -> WalkProgram:
    return compile_gate_sequence(five_one_gates(), layout).named("five-one-encode")


def five_one_recovery(layout: Layout = LAYOUT5) -> WalkProgram:
    branches = []
    for s, fix in sorted(five_one_recovery_table().items()):
        if fix == "I":
            continue
        flt = PositionFilter.on(layout, level_1={bits_to_position(s[0:2], 4)},
                                level_2={bits_to_position(s[2:4], 4)})
        branches.append((flt, [Coin(coin_matrix(_PAULI_MATS[fix], fix))]))
    return WalkProgram((select(*branches),), name="five-one-recovery")


def five_one_unencode(layout: Layout = LAYOUT5) -> WalkProgram:
    """The encoder run backwards (every gate here is self-inverse)."""
    return compile_gate_sequence(list(reversed(five_one_gates())), layout).named("five-one-unencode")


def five_one_decode(layout: Layout = LAYOUT5) -> WalkProgram:
    return concat([five_one_unencode(layout), five_one_recovery(layout)], name="five-one-decode")


# ----------------------------------------------------------------------------
# sweeps


def single_errors(n: int, kinds: Iterable[str]) -> list[PauliError]:
    out = [NO_ERROR]
    for k in kinds:
        out += [PauliError(q, k) for q in range(1, n + 1)]
    return out


@lru_cache(maxsize=None)
def get_code(name: str) -> Code:
    if name == "bitflip":
        return Code(name, 3, bitflip_encode(), bitflip_decode(), tuple(single_errors(3, "X")))
    if name == "phaseflip":
        return Code(name, 3, phaseflip_encode(), phaseflip_decode(), tuple(single_errors(3, "Z")))
    if name in ("five-one", "five_one"):
        return Code("five-one", 5, five_one_encode(), five_one_decode(), tuple(single_errors(5, "XYZ")))
    raise InvalidArgument(f"unknown code {name!r}")


CODE_NAMES = ("bitflip", "phaseflip", "five-one")


def run_code(code: Code, logical, errors: Sequence[PauliError] = ()) -> CodeRun:
    layout = code.layout
    state = run_program(logical_state(layout, logical), code.encode)
    for e in errors:
        state = inject_pauli_error(state, e)
    state = run_program(state, code.decode)
    fid = min(1.0, max(0.0, coin_fidelity(state, logical)))
    return CodeRun(np.asarray(logical, dtype=np.complex128), tuple(errors), fid)


@dataclass
class SweepResult:
    code: str
    runs: list[CodeRun]
    tolerance: float = FIDELITY_TOL

    @property
    def worst(self) -> float:
        return min(r.fidelity for r in self.runs)

    @property
    def passed(self) -> bool:
        return self.worst >= 1 - self.tolerance

    def by_error(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r in self.runs:
            out[r.label] = min(out.get(r.label, 1.0), r.fidelity)
        return out


def sweep(code_name: str, errors: Optional[Sequence[PauliError]] = None,
          logicals: Optional[dict] = None) -> SweepResult:
    code = get_code(code_name)
    errors = code.correctable if errors is None else errors
    logicals = LOGICAL_TEST_STATES if logicals is None else logicals
    runs = [run_code(code, v, (e,)) for e in errors for v in logicals.values()]
    return SweepResult(code.name, runs)
