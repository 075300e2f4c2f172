"""Time and space cost accounting for walk programs and circuit-model schedules.

Walk steps are counted greedily under a :class:`StepConvention`.  A step is one
coin operation optionally followed by one shift.  Global phases are free.  A
Select costs as much as its longest branch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .hilbert import InvalidArgument, Layout
from .walkops import Coin, GlobalPhase, PositionPhase, Select, Shift, WalkProgram


@dataclass(frozen=True)
class StepConvention:
    name: str
    # runs of diagonal coin/phase operations share one step
    fuse_diagonal: bool = True
    # a diagonal operation joins an adjacent coin operation with the same filter
    absorb_diagonal: bool = True
    # a coin followed by a shift is a single step
    coin_then_shift: bool = True
    # a trailing coin joins a following Select whose branches all open with a shift
    merge_into_select: bool = True

    def flags(self) -> dict:
        return {
            "fuse_diagonal": self.fuse_diagonal,
            "absorb_diagonal": self.absorb_diagonal,
            "coin_then_shift": self.coin_then_shift,
            "merge_into_select": self.merge_into_select,
        }


CALIBRATED = StepConvention("calibrated")


def all_conventions() -> list[StepConvention]:
    out = []
    for bits in itertools.product((True, False), repeat=4):
        label = "".join("1" if b else "0" for b in bits)
        out.append(StepConvention(f"flags-{label}", *bits))
    return out


@dataclass
class _Step:
    kind: str  # diag, coin, walk, shift, select
    filters: set = field(default_factory=set)
    open: bool = True
    weight: int = 1


@dataclass(frozen=True)
class _Profile:
    steps: int
    starts_with_shift: bool
    ends_open: bool


def _filter_key(ins):
    if isinstance(ins, PositionPhase):
        return ("phase", ins.level, ins.phases, ins.filter)
    return ("coin", ins.filter)


def _profile(instructions, conv: StepConvention) -> _Profile:
    steps: list[_Step] = []
    for ins in instructions:
        prev = steps[-1] if steps else None
        if isinstance(ins, GlobalPhase):
            continue
        if isinstance(ins, (Coin, PositionPhase)):
            key = _filter_key(ins)
            diagonal = isinstance(ins, PositionPhase) or ins.op.is_diagonal()
            if diagonal:
                if prev and prev.open and prev.kind == "diag" and conv.fuse_diagonal:
                    prev.filters.add(key)
                    continue
                if (prev and prev.open and prev.kind == "coin" and conv.absorb_diagonal
                        and prev.filters == {key}):
                    continue
                steps.append(_Step("diag", {key}))
            else:
                if (prev and prev.open and prev.kind == "diag" and conv.absorb_diagonal
                        and prev.filters == {key}):
                    prev.kind = "coin"
                    continue
                steps.append(_Step("coin", {key}))
            continue
        if isinstance(ins, Shift):
            if prev and prev.open and conv.coin_then_shift and prev.kind in ("diag", "coin", "select"):
                prev.open = False
                if prev.kind != "select":
                    prev.kind = "walk"
                continue
            steps.append(_Step("shift", open=False))
            continue
        if isinstance(ins, Select):
            profiles = [_profile(br.body, conv) for br in ins.branches]
            profiles = [p for p in profiles if p.steps]
            if not profiles:
                continue
            merge = (prev is not None and prev.open and conv.merge_into_select
                     and all(p.starts_with_shift for p in profiles))
            weight = max(p.steps - (1 if merge else 0) for p in profiles)
            if merge:
                prev.open = False
            steps.append(_Step("select", open=all(p.ends_open for p in profiles), weight=weight))
            continue
        raise TypeError(f"not a walk instruction: {ins!r}")
    total = sum(s.weight for s in steps)
    return _Profile(total, bool(steps) and steps[0].kind == "shift",
                    bool(steps) and steps[-1].open and steps[-1].kind != "shift")


def walk_time_steps(program, convention: StepConvention = CALIBRATED) -> int:
    """Fused time steps of a program.

    Declared ``steps`` metadata overrides the greedy count: instructions with
    the same id run together.
    """
    if isinstance(program, WalkProgram) and program.steps is not None:
        return len({s for s, ins in zip(program.steps, program.instructions)
                    if not isinstance(ins, GlobalPhase)})
    instructions = program.instructions if isinstance(program, WalkProgram) else tuple(program)
    return _profile(instructions, convention).steps


# ----------------------------------------------------------------------------
# circuit model

# Column cost of composite gates, from the circuit decompositions they stand for.
CIRCUIT_GATE_COSTS = {
    "H": 1,
    "P": 1,
    "T": 1,
    "CNOT": 1,
    "TWIN_CNOT": 1,
    "X": 3,
    "Z": 1,
    "SWAP": 3,
    "CPHASE": 5,
    "CU": 5,
    "CCZ": 11,
    "TOFFOLI": 13,
    "CCCNOT": 45,
}


@dataclass(frozen=True)
class CircuitGate:
    kind: str
    qubits: tuple[int, ...]
    phi: Optional[float] = None

    def __post_init__(self):
        if self.kind not in CIRCUIT_GATE_COSTS:
            raise InvalidArgument(f"unknown circuit gate {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidArgument(f"{self.kind} qubits must be distinct")

    @property
    def cost(self) -> int:
        return CIRCUIT_GATE_COSTS[self.kind]


@dataclass(frozen=True)
class CircuitSpec:
    name: str
    num_qubits: int
    columns: tuple[tuple[CircuitGate, ...], ...]
    ancillas: int = 0

    def __post_init__(self):
        for i, col in enumerate(self.columns):
            used: set[int] = set()
            for g in col:
                if used & set(g.qubits):
                    raise InvalidArgument(f"{self.name}: column {i} reuses a qubit")
                if any(not 1 <= q <= self.num_qubits for q in g.qubits):
                    raise InvalidArgument(f"{self.name}: qubit out of range in column {i}")
                used |= set(g.qubits)

    @property
    def space(self) -> int:
        return self.num_qubits


def circuit_time_steps(circuit: CircuitSpec) -> int:
    return sum(max(g.cost for g in col) for col in circuit.columns if col)


def _col(*gates) -> tuple[CircuitGate, ...]:
    return tuple(CircuitGate(k, tuple(q)) for k, *q in gates)


def grover_circuit() -> CircuitSpec:
    """One Grover iteration for target |011> with a phase-kickback ancilla (qubit 4, prepared in |1>)."""
    cols = (
        _col(("H", 1), ("H", 2), ("H", 3), ("H", 4)),
        _col(("X", 1)),
        _col(("CCCNOT", 1, 2, 3, 4)),
        _col(("X", 1)),
        _col(("H", 1), ("H", 2), ("H", 3)),
        _col(("X", 1), ("X", 2), ("X", 3)),
        _col(("CCZ", 1, 2, 3)),
        _col(("X", 1), ("X", 2), ("X", 3)),
        _col(("H", 1), ("H", 2), ("H", 3)),
        _col(("H", 4)),
    )
    return CircuitSpec("grover", 4, cols, ancillas=1)


def qft_circuit() -> CircuitSpec:
    cols = (
        _col(("H", 1)),
        _col(("CPHASE", 2, 1)),
        _col(("CPHASE", 3, 1)),
        _col(("H", 2)),
        _col(("CPHASE", 3, 2)),
        _col(("H", 3)),
        _col(("SWAP", 1, 3)),
    )
    return CircuitSpec("qft", 3, cols)


def qpe_circuit() -> CircuitSpec:
    """Register qubits 1-2, eigenvector on qubit 3."""
    cols = (
        _col(("H", 1), ("H", 2)),
        _col(("CU", 2, 3)),
        _col(("CU", 1, 3)),
        _col(("H", 1)),
        _col(("CPHASE", 1, 2)),
        _col(("H", 2)),
        _col(("SWAP", 1, 2)),
    )
    return CircuitSpec("qpe", 3, cols)


def bitflip_circuit() -> CircuitSpec:
    cols = (
        _col(("TWIN_CNOT", 1, 2, 3)),
        _col(("TWIN_CNOT", 1, 2, 3)),
        _col(("TOFFOLI", 2, 3, 1)),
    )
    return CircuitSpec("bitflip", 3, cols)


def single_gate_circuit(kind: str, n: int) -> CircuitSpec:
    return CircuitSpec(kind.lower(), n, (_col((kind, *range(1, n + 1))),))


CIRCUITS = {
    "grover": grover_circuit,
    "qft": qft_circuit,
    "qpe": qpe_circuit,
    "bitflip": bitflip_circuit,
    "toffoli": lambda: single_gate_circuit("TOFFOLI", 3),
    "cccnot": lambda: single_gate_circuit("CCCNOT", 4),
    "ccz": lambda: single_gate_circuit("CCZ", 3),
    "cphase": lambda: single_gate_circuit("CPHASE", 2),
    "swap": lambda: single_gate_circuit("SWAP", 2),
    "x": lambda: single_gate_circuit("X", 1),
}


def space_complexity(layout: Optional[Layout] = None, circuit: Optional[CircuitSpec] = None) -> int:
    """Real qubits: one walker for any layout, or the circuit's qubit count."""
    if circuit is not None:
        return circuit.space
    return 1


# ----------------------------------------------------------------------------
# artifacts and targets


def walk_artifact(name: str) -> WalkProgram:
    from . import algorithms, qec
    from .walkops import PAULI_X

    if name == "grover":
        return algorithms.grover_program("011", algorithms.GROVER_ITERATIONS)
    if name == "qft":
        return algorithms.compile_qft3()
    if name == "qpe":
        return algorithms.phase_estimation_program(algorithms.eigen_phase_coin(0.25), PAULI_X)
    if name == "bitflip":
        return qec.bitflip_encode() + qec.bitflip_decode()
    raise InvalidArgument(f"no walk program for {name!r}")


WALK_ARTIFACTS = ("grover", "qft", "qpe", "bitflip")

# (model, artifact) -> published count
TARGETS = {
    ("walk", "grover"): 39,
    ("walk", "qft"): 9,
    ("walk", "qpe"): 17,
    ("walk", "bitflip"): 5,
    ("circuit", "grover"): 72,
    ("circuit", "qft"): 21,
    ("circuit", "qpe"): 21,
    ("circuit", "toffoli"): 13,
    ("circuit", "cccnot"): 45,
    ("circuit", "ccz"): 11,
    ("circuit", "cphase"): 5,
    ("circuit", "swap"): 3,
    ("circuit", "x"): 3,
    ("circuit", "bitflip"): 15,
}


@dataclass
class CostReport:
    artifact: str
    walk_time_steps: Optional[int]
    walk_space: Optional[int]
    circuit_time_steps: Optional[int]
    circuit_space: Optional[int]
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        for v in (self.walk_time_steps, self.walk_space, self.circuit_time_steps, self.circuit_space):
            if v is not None and v < 0:
                raise InvalidArgument("counts must be >= 0")

    def as_dict(self) -> dict:
        return {
            "artifact": self.artifact,
            "walk_time_steps": self.walk_time_steps,
            "walk_space": self.walk_space,
            "circuit_time_steps": self.circuit_time_steps,
            "circuit_space": self.circuit_space,
            "notes": list(self.notes),
        }


def cost_report(artifact: str, convention: StepConvention = CALIBRATED) -> CostReport:
    walk = walk_space = None
    if artifact in WALK_ARTIFACTS:
        walk = walk_time_steps(walk_artifact(artifact), convention)
        walk_space = space_complexity()
    circ = CIRCUITS.get(artifact)
    circuit_steps = circuit_time_steps(circ()) if circ else None
    circuit_space = circ().space if circ else None
    notes = [f"walk convention {convention.name}: {convention.flags()}"]
    for model, value in (("walk", walk), ("circuit", circuit_steps)):
        target = TARGETS.get((model, artifact))
        if value is not None and target is not None and value != target:
            notes.append(f"{model} count {value} differs from the published {target}")
    return CostReport(artifact, walk, walk_space, circuit_steps, circuit_space, notes)


def achieved(model: str, artifact: str, convention: StepConvention = CALIBRATED) -> int:
    if model == "walk":
        return walk_time_steps(walk_artifact(artifact), convention)
    return circuit_time_steps(CIRCUITS[artifact]())


@dataclass(frozen=True)
class TargetCheck:
    model: str
    artifact: str
    target: int
    achieved: int

    @property
    def reached(self) -> bool:
        return self.target == self.achieved


def check_targets(convention: StepConvention = CALIBRATED) -> list[TargetCheck]:
    return [TargetCheck(m, a, t, achieved(m, a, convention)) for (m, a), t in TARGETS.items()]


def calibrate() -> list[tuple[StepConvention, int]]:
    """Every flag combination with the number of targets it reaches, best first."""
    walk_programs = {a: walk_artifact(a) for a in WALK_ARTIFACTS}
    circuit_hits = sum(1 for (m, a), t in TARGETS.items()
                       if m == "circuit" and circuit_time_steps(CIRCUITS[a]()) == t)
    out = []
    for conv in all_conventions():
        hits = circuit_hits + sum(1 for a, p in walk_programs.items()
                                  if walk_time_steps(p, conv) == TARGETS[("walk", a)])
        out.append((conv, hits))
    out.sort(key=lambda item: -item[1])
    return out
