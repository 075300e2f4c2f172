"""Compile H, P, CNOT and multi-controlled gates into walk programs.

The case tables are written over ket *labels*: a label is the binary value of
the qubit pair held by a four-site graph.  Under the default Gray layout label
``l`` sits on vertex ``(0, 1, 3, 2)[l]``; under the binary layout labels and
vertices coincide.  Each construction can be built in two readings:

``literal``
    labels used directly as vertex numbers, tables as printed.
``validated``
    labels mapped onto vertices, plus the corrections listed in
    :data:`CORRECTIONS`.  This is what the compiler emits.

Both readings are oracle-checked by :func:`discrepancy_records`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .hilbert import Convention, InvalidArgument, Layout, make_layout, position_to_bits
from .walkops import (
    HADAMARD,
    PAULI_X,
    PAULI_Z,
    Coin,
    GlobalPhase,
    PositionFilter,
    PositionPhase,
    Shift,
    WalkProgram,
    coin_matrix,
    concat,
    phase_coin,
    select,
    w_instructions,
)


class CompileDiscrepancy(RuntimeError):
    """No reading of a construction realizes the requested gate on this layout."""


# ----------------------------------------------------------------------------
# gate requests


@dataclass(frozen=True)
class GateSpec:
    kind: str
    qubits: tuple[int, ...] = ()
    phi: Optional[float] = None
    # Control polarities for multi-controlled phases (1 = fires on |1>).
    values: Optional[tuple[int, ...]] = None

    def __str__(self):
        parts = [self.kind, *map(str, self.qubits)]
        if self.phi is not None:
            parts.append(repr(self.phi))
        if self.values is not None and any(v != 1 for v in self.values):
            parts.append("values=" + "".join(map(str, self.values)))
        return " ".join(parts)


def H(q: int) -> GateSpec:
    return GateSpec("H", (q,))


def P(q: int, phi: float) -> GateSpec:
    return GateSpec("P", (q,), float(phi))


def CNOT(c: int, t: int) -> GateSpec:
    return GateSpec("CNOT", (c, t))


def X(q: int) -> GateSpec:
    return GateSpec("X", (q,))


def Z(q: int) -> GateSpec:
    return GateSpec("Z", (q,))


def Y(q: int) -> GateSpec:
    return GateSpec("Y", (q,))


def GPHASE(phi: float) -> GateSpec:
    return GateSpec("GPHASE", (), float(phi))


def TOFFOLI(c1: int, c2: int, t: int) -> GateSpec:
    return GateSpec("TOFFOLI", (c1, c2, t))


def CCZ(a: int, b: int, c: int) -> GateSpec:
    return GateSpec("CCZ", (a, b, c))


def CCCZ(qubits: Sequence[int], values: Optional[Sequence[int]] = None) -> GateSpec:
    qubits = tuple(qubits)
    values = tuple(values) if values is not None else (1,) * len(qubits)
    return GateSpec("CCCZ", qubits, None, values)


# ----------------------------------------------------------------------------
# label reading

GRAY_VERTEX_OF_LABEL = (0, 1, 3, 2)


def label_vertices(labels: Iterable[int], layout: Layout, level: int, literal: bool = False) -> frozenset:
    size = layout.size_of_level(level)
    labels = [l for l in labels if l < size]
    if size == 2 or literal or layout.mapping_convention is Convention.BINARY:
        return frozenset(labels)
    return frozenset(GRAY_VERTEX_OF_LABEL[l] for l in labels)


def label_vertex(label: int, layout: Layout, level: int, literal: bool = False) -> int:
    (v,) = label_vertices([label], layout, level, literal)
    return v


def bit_vertices(layout: Layout, qubit: int, value: int = 1) -> frozenset:
    """Vertices of the qubit's graph on which the qubit equals ``value``."""
    level = layout.level_of(qubit)
    size = layout.size_of_level(level)
    if size == 2:
        return frozenset({value})
    slot = layout.slot_of(qubit)
    return frozenset(
        m for m in range(4)
        if position_to_bits(m, 4, layout.mapping_convention)[slot] == value
    )


def _flt(layout: Layout, coin: Optional[int] = None, **levels) -> PositionFilter:
    return PositionFilter.on(layout, coin=coin, **levels)


def _move_ok(layout: Layout, qubit: int, src: int, direction: int, steps: int = 1) -> bool:
    """Does moving by ``direction`` flip exactly ``qubit``'s bit at vertex ``src``?"""
    level = layout.level_of(qubit)
    size = layout.size_of_level(level)
    dst = (src + direction * steps) % size
    if size == 2:
        return dst != src
    conv = layout.mapping_convention
    a, b = position_to_bits(src, 4, conv), position_to_bits(dst, 4, conv)
    slot = layout.slot_of(qubit)
    return a[slot] != b[slot] and a[1 - slot] == b[1 - slot]


# ----------------------------------------------------------------------------
# Hadamard
#
# Branch tables: label -> (variant offset, direction).  Variant offset 0 means
# W^{k}, 1 means W^{k+1}; the first bit table serves even qubits, the second
# bit table odd qubits and the trailing two-site graph.

H_FIRST_BIT = {0: (0, -1), 1: (0, +1), 3: (1, -1), 2: (1, +1)}
H_SECOND_BIT = {0: (0, +1), 1: (1, -1), 3: (1, +1), 2: (0, -1)}


def _hadamard_position(q: int, layout: Layout, literal: bool) -> WalkProgram:
    level = layout.level_of(q)
    size = layout.size_of_level(level)
    table = H_FIRST_BIT if (size == 4 and q % 2 == 0) else H_SECOND_BIT
    branches = []
    for label, (offset, direction) in sorted(table.items()):
        if label >= size:
            continue
        m = label_vertex(label, layout, level, literal)
        moved = (m + direction) % size
        if not literal and not _move_ok(layout, q, m, direction):
            raise CompileDiscrepancy(
                f"H({q}): vertex {m} and {moved} do not differ in qubit {q} "
                f"under the {layout.mapping_convention.value} layout"
            )
        for k in (0, 1):
            variant = (k + offset) % 2
            body = w_instructions(layout, level, variant, direction, vertex=m,
                                  shift_coin=variant if literal else k)
            branches.append((_flt(layout, coin=k, **{f"level_{level}": {m}}),
                             [Coin(HADAMARD), *body]))
    return WalkProgram((select(*branches),), name=f"H{q}")


def compile_hadamard(q: int, layout: Layout, literal: bool = False) -> WalkProgram:
    layout.check_qubit(q)
    if q == 1:
        return WalkProgram((Coin(HADAMARD),), name="H1")
    return _hadamard_position(q, layout, literal)


# ----------------------------------------------------------------------------
# phase

P_FIRST_BIT = (2, 3)
P_SECOND_BIT = (1, 3)


def compile_phase(q: int, phi: float, layout: Layout, literal: bool = False) -> WalkProgram:
    layout.check_qubit(q)
    phi = float(phi)
    if q == 1:
        return WalkProgram((Coin(phase_coin(phi)),), name=f"P1({phi!r})")
    level = layout.level_of(q)
    size = layout.size_of_level(level)
    labels = P_FIRST_BIT if (size == 4 and q % 2 == 0) else P_SECOND_BIT
    verts = label_vertices(labels, layout, level, literal)
    phases = tuple(phi if m in verts else 0.0 for m in range(size))
    return WalkProgram((PositionPhase(level, phases),), name=f"P{q}({phi!r})")


# ----------------------------------------------------------------------------
# CNOT
#
# Each table lists the control labels and (direction, target labels) terms.
# The coin-targeted cases list only the control labels.

@dataclass(frozen=True)
class CnotTable:
    control: tuple[int, ...] = ()
    terms: tuple[tuple[int, tuple[int, ...]], ...] = ()


CNOT_TABLES = {
    "1a": CnotTable((), ((+1, (0,)), (-1, (1,)))),
    "1b": CnotTable((1,)),
    "1c": CnotTable((), ((+1, (1, 2)), (-1, (0, 3)))),
    "1d": CnotTable((), ((+1, (0, 3)), (-1, (1, 2)))),
    "1e": CnotTable((2, 3)),
    "1f": CnotTable((1, 3)),
    "2a": CnotTable((), ((+1, (2,)), (-1, (3,)))),
    "2b": CnotTable((), ((+1, (1,)), (-1, (3,)))),
    "3a": CnotTable((1, 3), ((+1, (0, 3)), (-1, (1, 2)))),
    "3b": CnotTable((2, 3), ((+1, (0, 3)), (-1, (1, 2)))),
    "3c": CnotTable((2, 3), ((+1, (1, 2)), (-1, (0, 3)))),
    "3d": CnotTable((1, 3), ((+1, (1, 2)), (-1, (0, 3)))),
    "4a": CnotTable((2, 3), ((+1, (0,)), (-1, (1,)))),
    "4b": CnotTable((1, 3), ((+1, (0,)), (-1, (1,)))),
}

CNOT_CASES = tuple(CNOT_TABLES)

# Validated reading: (table to use, flip directions).
CNOT_VALIDATED = {
    "2a": ("2b", False),
    "2b": ("2a", True),
    "3b": ("3d", False),
    "3d": ("3b", False),
}


def cnot_case(qc: int, qt: int, layout: Layout) -> str:
    """Which of the fourteen CNOT cases handles ``(qc, qt)``."""
    layout.check_qubit(qc)
    layout.check_qubit(qt)
    if qc == qt:
        raise InvalidArgument("control and target must differ")
    n = layout.num_qubits
    tail = n % 2 == 0
    if qc == 1:
        if tail and qt == n:
            return "1a"
        return "1c" if qt % 2 == 0 else "1d"
    if qt == 1:
        if tail and qc == n:
            return "1b"
        return "1e" if qc % 2 == 0 else "1f"
    i, j = layout.level_of(qc), layout.level_of(qt)
    if i == j:
        return "2a" if qc % 2 == 1 else "2b"
    if tail and qt == n:
        return "4a" if qc % 2 == 0 else "4b"
    if qc % 2 == 1:
        return "3a" if qt % 2 == 1 else "3b"
    return "3c" if qt % 2 == 0 else "3d"


def _control_vertices(table: CnotTable, qc: int, layout: Layout, literal: bool) -> frozenset:
    level = layout.level_of(qc)
    if layout.size_of_level(level) == 2 and not literal:
        # A trailing-graph control is set exactly on vertex 1, whatever the
        # parity of the table that dispatch picked.
        return frozenset({1})
    verts = label_vertices(table.control, layout, level, literal)
    if not verts:
        raise CompileDiscrepancy(f"control set {table.control} is empty on level {level}")
    return verts


def compile_cnot(qc: int, qt: int, layout: Layout, literal: bool = False) -> WalkProgram:
    case = cnot_case(qc, qt, layout)
    table_id, flip = (case, False) if literal else CNOT_VALIDATED.get(case, (case, False))
    table = CNOT_TABLES[table_id]
    name = f"CNOT{qc},{qt}"
    sign = -1 if flip else 1

    if case in ("1b", "1e", "1f"):
        ctrl = _control_vertices(table, qc, layout, literal)
        i = layout.level_of(qc)
        return WalkProgram((Coin(PAULI_X, _flt(layout, **{f"level_{i}": ctrl})),), name=name)

    j = layout.level_of(qt)
    double = case[0] != "1"
    ctrl_levels = {}
    if case[0] in "34":
        i = layout.level_of(qc)
        ctrl_levels[f"level_{i}"] = _control_vertices(table, qc, layout, literal)
    branches = []
    for direction, labels in table.terms:
        d = sign * direction
        for m in sorted(label_vertices(labels, layout, j, literal)):
            if not literal:
                _require_move(layout, qt, m, d, name)
            body = (Shift(j, 1, d), Shift(j, 0, d)) if double else (Shift(j, 1, d),)
            branches.append((_flt(layout, **{f"level_{j}": {m}}, **ctrl_levels), body))
    return WalkProgram((select(*branches),), name=name)


def _require_move(layout: Layout, q: int, m: int, d: int, name: str) -> None:
    if not _move_ok(layout, q, m, d):
        raise CompileDiscrepancy(
            f"{name}: moving {d:+d} from vertex {m} does not flip qubit {q} "
            f"under the {layout.mapping_convention.value} layout"
        )


# ----------------------------------------------------------------------------
# multi-controlled phases and Toffoli


def _condition(layout: Layout, qubits: Sequence[int], values: Sequence[int]):
    """Split a bit condition into a coin value and per-level vertex sets."""
    coin = None
    levels: dict[int, frozenset] = {}
    for q, v in zip(qubits, values):
        layout.check_qubit(q)
        if v not in (0, 1):
            raise InvalidArgument(f"control value must be 0 or 1, got {v}")
        if q == 1:
            coin = v
            continue
        j = layout.level_of(q)
        verts = bit_vertices(layout, q, v)
        levels[j] = levels.get(j, frozenset(range(layout.size_of_level(j)))) & verts
    return coin, levels


def compile_multi_z(qubits: Sequence[int], layout: Layout, values: Optional[Sequence[int]] = None,
                    name: Optional[str] = None) -> WalkProgram:
    """Phase pi on the basis states where every listed qubit equals its value.

    With the coin involved this is a position-filtered coin; otherwise a
    position phase on one graph, filtered on the others.
    """
    qubits = tuple(qubits)
    if len(set(qubits)) != len(qubits):
        raise InvalidArgument("qubits must be distinct")
    values = tuple(values) if values is not None else (1,) * len(qubits)
    coin, levels = _condition(layout, qubits, values)
    if coin is not None:
        mat = np.diag([1.0, -1.0]) if coin == 1 else np.diag([-1.0, 1.0])
        flt = _flt(layout, **{f"level_{j}": s for j, s in levels.items()})
        return WalkProgram((Coin(coin_matrix(mat, "Z" if coin else "Zbar"), flt),), name=name)
    j = max(levels)
    phases = tuple(math.pi if m in levels[j] else 0.0 for m in range(layout.size_of_level(j)))
    flt = _flt(layout, **{f"level_{i}": s for i, s in levels.items() if i != j})
    return WalkProgram((PositionPhase(j, phases, flt),), name=name)


def compile_ccz(a: int, b: int, c: int, layout: Layout) -> WalkProgram:
    return compile_multi_z((a, b, c), layout, name=f"CCZ{a},{b},{c}")


def compile_cccz(qubits: Sequence[int], layout: Layout, values: Optional[Sequence[int]] = None) -> WalkProgram:
    if len(qubits) != 4:
        raise InvalidArgument("CCCZ acts on four qubits")
    return compile_multi_z(qubits, layout, values, name="CCCZ" + ",".join(map(str, qubits)))


def compile_toffoli(c1: int, c2: int, t: int, layout: Layout) -> WalkProgram:
    if len({c1, c2, t}) != 3:
        raise InvalidArgument("Toffoli qubits must be distinct")
    name = f"TOFFOLI{c1},{c2},{t}"
    if t == 1:
        coin, levels = _condition(layout, (c1, c2), (1, 1))
        flt = _flt(layout, **{f"level_{j}": s for j, s in levels.items()})
        return WalkProgram((Coin(PAULI_X, flt),), name=name)
    h = compile_hadamard(t, layout)
    return concat([h, compile_ccz(c1, c2, t, layout), h], name=name)


def compile_pauli_x(q: int, layout: Layout) -> WalkProgram:
    if q == 1:
        return WalkProgram((Coin(PAULI_X),), name="X1")
    h = compile_hadamard(q, layout)
    return concat([h, compile_phase(q, math.pi, layout), h], name=f"X{q}")


def compile_pauli_z(q: int, layout: Layout) -> WalkProgram:
    if q == 1:
        return WalkProgram((Coin(PAULI_Z),), name="Z1")
    return compile_phase(q, math.pi, layout).named(f"Z{q}")


def compile_pauli_y(q: int, layout: Layout) -> WalkProgram:
    # Y = i X Z
    return concat([compile_pauli_z(q, layout), compile_pauli_x(q, layout),
                   WalkProgram((GlobalPhase(math.pi / 2),))], name=f"Y{q}")


def compile_gate(gate: GateSpec, layout: Layout) -> WalkProgram:
    q = gate.qubits
    kind = gate.kind
    if kind == "H":
        return compile_hadamard(q[0], layout)
    if kind == "P":
        return compile_phase(q[0], gate.phi, layout)
    if kind == "CNOT":
        return compile_cnot(q[0], q[1], layout)
    if kind == "X":
        return compile_pauli_x(q[0], layout)
    if kind == "Z":
        return compile_pauli_z(q[0], layout)
    if kind == "Y":
        return compile_pauli_y(q[0], layout)
    if kind == "GPHASE":
        return WalkProgram((GlobalPhase(gate.phi),), name="GPHASE")
    if kind == "TOFFOLI":
        return compile_toffoli(*q, layout)
    if kind == "CCZ":
        return compile_multi_z(q, layout, gate.values, name="CCZ")
    if kind == "CCCZ":
        return compile_cccz(q, layout, gate.values)
    if kind == "CZ":
        return compile_multi_z(q, layout, gate.values, name="CZ")
    raise InvalidArgument(f"unknown gate kind {kind!r}")


def compile_gate_sequence(gates: Iterable[GateSpec], layout: Layout) -> WalkProgram:
    return concat((compile_gate(g, layout) for g in gates), name=None)


# ----------------------------------------------------------------------------
# gate list text format

_ARITY = {"H": 1, "X": 1, "Y": 1, "Z": 1, "P": 1, "CNOT": 2, "CZ": 2,
          "TOFFOLI": 3, "CCZ": 3, "CCCZ": 4, "GPHASE": 0}


def parse_gate_list(text: str) -> list[GateSpec]:
    """Parse ``H 2`` / ``P 3 1.5707963268`` / ``CNOT 1 4`` lines; ``#`` starts a comment."""
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0].upper()
        if kind not in _ARITY:
            raise InvalidArgument(f"line {lineno}: unknown gate {tok[0]!r}")
        arity = _ARITY[kind]
        args = tok[1:]
        values = None
        if args and args[-1].startswith("values="):
            values = tuple(int(ch) for ch in args.pop()[len("values="):])
        takes_phi = kind in ("P", "GPHASE")
        if len(args) != arity + takes_phi:
            raise InvalidArgument(f"line {lineno}: {kind} takes {arity} qubit(s)" + (" and a phase" if takes_phi else ""))
        try:
            qubits = tuple(int(a) for a in args[:arity])
            phi = float(args[arity]) if takes_phi else None
        except ValueError:
            raise InvalidArgument(f"line {lineno}: bad number in {line!r}") from None
        if kind in ("CCZ", "CCCZ", "CZ") and values is None:
            values = (1,) * arity
        gates.append(GateSpec(kind, qubits, phi, values))
    return gates


def format_gate_list(gates: Iterable[GateSpec]) -> str:
    return "".join(str(g) + "\n" for g in gates)


# ----------------------------------------------------------------------------
# discrepancy ledger


@dataclass(frozen=True)
class DiscrepancyRecord:
    construction: str
    equation: str
    literal_verdict: dict = field(hash=False)
    correction: str
    convention: str

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "equation": self.equation,
            "literal_verdict": dict(self.literal_verdict),
            "correction": self.correction,
            "convention": self.convention,
        }


LABEL_NOTE = "labels read as binary pair values placed on Gray vertices"
W_NOTE = "W shifts on the input coin value (the hierarchical-scheme form of W), not on its variant index"

CORRECTIONS = {
    "H1": ("coin-hadamard", "none; coin normalized by 1/sqrt(2)"),
    "H_even": ("hadamard-first-bit", LABEL_NOTE + "; " + W_NOTE),
    "H_odd": ("hadamard-second-bit", LABEL_NOTE + "; " + W_NOTE),
    "H_tail": ("hadamard-trailing-graph", W_NOTE + "; W allowed on the two-site graph"),
    "P1": ("coin-phase", "none"),
    "P_even": ("phase-first-bit", LABEL_NOTE),
    "P_odd": ("phase-second-bit", LABEL_NOTE),
    "P_tail": ("phase-trailing-graph", "none"),
    "CNOT_1a": ("cnot-table", "none"),
    "CNOT_1b": ("cnot-table", "none"),
    "CNOT_1c": ("cnot-table", LABEL_NOTE),
    "CNOT_1d": ("cnot-table", LABEL_NOTE),
    "CNOT_1e": ("cnot-table", LABEL_NOTE),
    "CNOT_1f": ("cnot-table", LABEL_NOTE),
    "CNOT_2a": ("cnot-table", LABEL_NOTE + "; uses the case 2b table (case headers swapped)"),
    "CNOT_2b": ("cnot-table", LABEL_NOTE + "; uses the case 2a table with shift directions flipped (case headers swapped)"),
    "CNOT_3a": ("cnot-table", LABEL_NOTE),
    "CNOT_3b": ("cnot-table", LABEL_NOTE + "; uses the case 3d table (case headers swapped)"),
    "CNOT_3c": ("cnot-table", LABEL_NOTE + "; a trailing-graph control uses vertex 1"),
    "CNOT_3d": ("cnot-table", LABEL_NOTE + "; uses the case 3b table (case headers swapped); a trailing-graph control uses vertex 1"),
    "CNOT_4a": ("cnot-table", LABEL_NOTE),
    "CNOT_4b": ("cnot-table", LABEL_NOTE),
    "TOFFOLI": ("toffoli", "H(t) CCZ H(t); coin target uses a position-filtered sigma_x"),
    "CCZ": ("ccz", "none"),
    "CCCZ": ("cccz", "filter sets derived from control polarities"),
}

# Representative instance of each construction: (N, gate).
_WITNESS = {
    "H1": (3, H(1)), "H_even": (3, H(2)), "H_odd": (3, H(3)), "H_tail": (4, H(4)),
    "P1": (3, P(1, math.pi / 2)), "P_even": (3, P(2, math.pi / 2)),
    "P_odd": (3, P(3, math.pi / 2)), "P_tail": (4, P(4, math.pi / 2)),
    "CNOT_1a": (4, CNOT(1, 4)), "CNOT_1b": (4, CNOT(4, 1)),
    "CNOT_1c": (3, CNOT(1, 2)), "CNOT_1d": (3, CNOT(1, 3)),
    "CNOT_1e": (3, CNOT(2, 1)), "CNOT_1f": (3, CNOT(3, 1)),
    "CNOT_2a": (3, CNOT(3, 2)), "CNOT_2b": (3, CNOT(2, 3)),
    "CNOT_3a": (5, CNOT(3, 5)), "CNOT_3b": (5, CNOT(3, 4)),
    "CNOT_3c": (5, CNOT(2, 4)), "CNOT_3d": (5, CNOT(2, 5)),
    "CNOT_4a": (6, CNOT(2, 6)), "CNOT_4b": (6, CNOT(3, 6)),
    "TOFFOLI": (3, TOFFOLI(2, 3, 1)), "CCZ": (3, CCZ(1, 2, 3)),
    "CCCZ": (5, CCCZ((2, 3, 4, 5), (0, 0, 1, 1))),
}


def construction_id(gate: GateSpec, layout: Layout) -> str:
    q = gate.qubits
    if gate.kind in ("H", "P"):
        if q[0] == 1:
            return f"{gate.kind}1"
        if layout.size_of_level(layout.level_of(q[0])) == 2:
            return f"{gate.kind}_tail"
        return f"{gate.kind}_even" if q[0] % 2 == 0 else f"{gate.kind}_odd"
    if gate.kind == "CNOT":
        return "CNOT_" + cnot_case(q[0], q[1], layout)
    return gate.kind


def _verdict(program_fn, gate: GateSpec, layout: Layout) -> str:
    from . import oracle

    try:
        prog = program_fn(layout)
    except (CompileDiscrepancy, InvalidArgument):
        return "fail (not expressible)"
    u = oracle.program_to_matrix(prog, layout)
    if oracle.unitarity_error(u) > 1e-9:
        return "fail (not unitary)"
    ref = oracle.reference_gate_matrix(gate, layout.num_qubits)
    ok = oracle.equiv_up_to_phase(oracle.to_qubit_basis(u, layout), ref).equal
    return "pass" if ok else "fail"


def _literal_program(gate: GateSpec, layout: Layout) -> WalkProgram:
    q = gate.qubits
    if gate.kind == "H":
        return compile_hadamard(q[0], layout, literal=True)
    if gate.kind == "P":
        return compile_phase(q[0], gate.phi, layout, literal=True)
    if gate.kind == "CNOT":
        return compile_cnot(q[0], q[1], layout, literal=True)
    return compile_gate(gate, layout)


@lru_cache(maxsize=None)
def discrepancy_records() -> tuple[DiscrepancyRecord, ...]:
    """One record per construction, with live oracle verdicts for both readings."""
    records = []
    for cid, (n, gate) in _WITNESS.items():
        literal, validated = {}, []
        for conv in Convention:
            lay = make_layout(n, conv)
            literal[conv.value] = _verdict(lambda l: _literal_program(gate, l), gate, lay)
            if _verdict(lambda l: compile_gate(gate, l), gate, lay) == "pass":
                validated.append(conv.value)
        equation, correction = CORRECTIONS[cid]
        records.append(DiscrepancyRecord(cid, equation, literal, correction,
                                         ",".join(validated) if validated else "none"))
    return tuple(records)


def record_for(gate: GateSpec, layout: Layout) -> DiscrepancyRecord:
    cid = construction_id(gate, layout)
    for rec in discrepancy_records():
        if rec.construction == cid:
            return rec
    raise KeyError(cid)
