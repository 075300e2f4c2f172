"""Three-qubit Grover search, QFT and phase estimation as walk programs.

All three run on the N=3 layout: the coin is qubit 1 and the single four-site
graph holds qubits 2 and 3.  Bit strings are written coin first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gates import DiscrepancyRecord, compile_hadamard, compile_phase
from .hilbert import (
    Convention,
    InvalidArgument,
    Layout,
    bits_to_position,
    init_state,
    make_layout,
    measure_all,
    position_to_bits,
    qubit_amplitudes,
)
from .walkops import (
    N0,
    N1,
    PAULI_X,
    Coin,
    CoinOp,
    GlobalPhase,
    PositionFilter,
    PositionPhase,
    Shift,
    WalkProgram,
    coin_matrix,
    concat,
    phase_coin,
    run_program,
    select,
)

LAYOUT3 = make_layout(3)
GROVER_ITERATIONS = 2


def _layout3(layout: Optional[Layout]) -> Layout:
    layout = LAYOUT3 if layout is None else layout
    if layout.num_qubits != 3 or layout.mapping_convention is not Convention.GRAY:
        raise InvalidArgument("the algorithms run on the three-qubit Gray layout")
    return layout


def _at(layout: Layout, *verts: int) -> PositionFilter:
    return PositionFilter.on(layout, level_1=set(verts))


def _check_bits(target: str) -> tuple[int, int]:
    if len(target) != 3 or set(target) - {"0", "1"}:
        raise InvalidArgument(f"target must be a 3-bit string, got {target!r}")
    coin = int(target[0])
    vertex = bits_to_position((int(target[1]), int(target[2])), 4)
    return coin, vertex


def _h(q: int, layout: Layout) -> WalkProgram:
    return compile_hadamard(q, layout)


# ----------------------------------------------------------------------------
# Grover


@dataclass
class GroverRun:
    target: str
    iterations: int
    # history[t] = P(target) after t iterations, t = 0..iterations
    history: list[float]
    probabilities: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.iterations < 0:
            raise InvalidArgument("iterations must be >= 0")

    @property
    def success_probability(self) -> float:
        return self.history[-1]


def grover_oracle(target: str, layout: Optional[Layout] = None) -> WalkProgram:
    """Sign flip on the target basis state: N0 or N1 on the target vertex only."""
    layout = _layout3(layout)
    coin, vertex = _check_bits(target)
    op = N1 if coin else N0
    return WalkProgram((Coin(op, _at(layout, vertex)),), name=f"oracle({target})")


def grover_diffusion(layout: Optional[Layout] = None) -> WalkProgram:
    """Sign flip on every state except |000>."""
    layout = _layout3(layout)
    return WalkProgram((Coin(N1), Coin(N0, _at(layout, 1, 2, 3))), name="diffusion")


def grover_hadamards(layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    return concat([_h(1, layout), _h(3, layout), _h(2, layout)], name="H1H3H2")


def grover_iteration(target: str, layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    had = grover_hadamards(layout)
    return concat([grover_oracle(target, layout), had, grover_diffusion(layout), had],
                  name=f"iteration({target})")


def grover_program(target: str, iterations: int = GROVER_ITERATIONS,
                   layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    if iterations < 0:
        raise InvalidArgument("iterations must be >= 0")
    parts = [grover_superposition(layout)] + [grover_iteration(target, layout)] * iterations
    return concat(parts, name=f"grover({target},{iterations})")


def grover_superposition(layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    return concat([_h(2, layout), _h(3, layout), _h(1, layout)], name="superposition")


def run_grover(target: str, iterations: int = GROVER_ITERATIONS,
               layout: Optional[Layout] = None) -> GroverRun:
    layout = _layout3(layout)
    _check_bits(target)
    if iterations < 0:
        raise InvalidArgument("iterations must be >= 0")
    state = run_program(init_state(layout), grover_superposition(layout))
    history = [measure_all(state)[target]]
    step = grover_iteration(target, layout)
    for _ in range(iterations):
        state = run_program(state, step)
        history.append(measure_all(state)[target])
    return GroverRun(target, iterations, history, measure_all(state))


def grover_closed_form(iterations: int, n: int = 3) -> float:
    theta = 2 * math.asin(1 / math.sqrt(2 ** n))
    return math.sin((2 * iterations + 1) * theta / 2) ** 2


# ----------------------------------------------------------------------------
# controlled swap
#
# A^k_d moves the coin-k part one vertex in direction d and flips the coin at
# the vertex it lands on.  Keyed on the walker's current vertex, the pattern
# below exchanges the coin and qubit 3 (the second bit of the Gray pair).

SWAP_PATTERN = {0: (1, +1), 1: (0, -1), 2: (0, +1), 3: (1, -1)}


def a_operator(layout: Layout, vertex: int, k: int, direction: int) -> list:
    landed = (vertex + direction) % layout.size_of_level(1)
    return [Shift(1, k, direction), Coin(PAULI_X, _at(layout, landed))]


def coin_swap(layout: Optional[Layout] = None) -> WalkProgram:
    """SWAP(coin, qubit 3)."""
    layout = _layout3(layout)
    branches = [(_at(layout, v), a_operator(layout, v, k, d)) for v, (k, d) in SWAP_PATTERN.items()]
    return WalkProgram((select(*branches),), name="swap13")


def controlled_swap(layout: Optional[Layout] = None) -> WalkProgram:
    """Fredkin with the coin as control: exchange qubits 2 and 3 when the coin is 1.

    On the Gray cycle this is the coin-1 shift pair that swaps vertices 1 and 3
    while fixing 0 and 2.
    """
    layout = _layout3(layout)
    one = PositionFilter.on(layout, coin=1, level_1={1})
    three = PositionFilter.on(layout, coin=1, level_1={3})
    body_one = [Shift(1, 1, +1), Shift(1, 1, +1)]
    body_three = [Shift(1, 1, -1), Shift(1, 1, -1)]
    return WalkProgram((select((one, body_one), (three, body_three)),), name="cswap")


# ----------------------------------------------------------------------------
# QFT
#
# Branch keyed on the input pair (q2, q3): every controlled phase of the
# textbook circuit has a known control there and collapses to a coin phase or
# a phase on qubit 2.  A final swap of qubits 1 and 3 restores natural order.

QFT_BRANCH_LABELS = ("00", "01", "11", "10")


def _qft_body(layout: Layout, q2: int, q3: int, literal: bool) -> list:
    ins = list(_h(1, layout))
    if literal:
        # as printed: QFT_01 lacks the qubit-2 phase; Phi is a branch phase
        coin_phase = {(0, 0): 0.0, (0, 1): math.pi / 4, (1, 1): 3 * math.pi / 4, (1, 0): 0.0}[(q2, q3)]
        if coin_phase:
            ins.append(Coin(phase_coin(coin_phase)))
        if (q2, q3) == (1, 0):
            ins.append(GlobalPhase(math.pi / 2))
        ins += list(_h(2, layout))
        if (q2, q3) == (1, 1):
            ins.append(GlobalPhase(math.pi / 2))
        ins += list(_h(3, layout))
        return ins
    coin_phase = math.pi / 2 * q2 + math.pi / 4 * q3
    if coin_phase:
        ins.append(Coin(phase_coin(coin_phase)))
    ins += list(_h(2, layout))
    if q3:
        ins += list(compile_phase(2, math.pi / 2, layout))
    ins += list(_h(3, layout))
    return ins


def compile_qft3(layout: Optional[Layout] = None, literal: bool = False) -> WalkProgram:
    """Three-qubit QFT, natural output order (qubit 1 most significant)."""
    layout = _layout3(layout)
    branches = []
    for label in QFT_BRANCH_LABELS:
        q2, q3 = int(label[0]), int(label[1])
        m = bits_to_position((q2, q3), 4)
        branches.append((_at(layout, m), _qft_body(layout, q2, q3, literal)))
    return WalkProgram((select(*branches), *coin_swap(layout)), name="qft3")


def qft_output(input_value: int, layout: Optional[Layout] = None) -> np.ndarray:
    """Qubit-basis output amplitudes of the QFT on basis input ``input_value``."""
    layout = _layout3(layout)
    if not 0 <= input_value < 8:
        raise InvalidArgument("QFT input must be in 0..7")
    bits = [(input_value >> s) & 1 for s in (2, 1, 0)]
    state = init_state(layout, bits[0], (bits_to_position((bits[1], bits[2]), 4),))
    return qubit_amplitudes(run_program(state, compile_qft3(layout)))


# ----------------------------------------------------------------------------
# phase estimation
#
# The register is the position pair with value x = 2 q2 + q3.  The controlled
# powers put U^x on the coin at the vertex holding x.  The inverse transform
# is H2, a -pi/2 phase on the |11> vertex and H3; it leaves the estimate in
# bit-reversed order, so phi~ = (q2 + 2 q3) / 4.


@dataclass
class PhaseEstimate:
    phi_estimate: float
    register: str
    # phi~ -> probability
    distribution: dict[float, float]
    coin_restored: bool = True

    def __post_init__(self):
        total = sum(self.distribution.values())
        if abs(total - 1.0) > 1e-9:
            raise InvalidArgument(f"distribution sums to {total}")

    @property
    def probability(self) -> float:
        return self.distribution[self.phi_estimate]


def _matrix_power(u: np.ndarray, p: int) -> np.ndarray:
    return np.linalg.matrix_power(u, p)


def controlled_powers(u_coin: CoinOp, layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    ins = []
    for m in range(4):
        b2, b3 = position_to_bits(m, 4)
        p = 2 * b2 + b3
        if p:
            ins.append(Coin(coin_matrix(_matrix_power(u_coin.matrix, p), f"U^{p}"), _at(layout, m)))
    return WalkProgram(tuple(ins), name="controlled-U")


def inverse_qft2(layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    vertex11 = bits_to_position((1, 1), 4)
    phases = tuple(-math.pi / 2 if m == vertex11 else 0.0 for m in range(4))
    return concat([_h(2, layout), WalkProgram((PositionPhase(1, phases),)), _h(3, layout)],
                  name="inverse-qft2")


def phase_estimation_program(u_coin: CoinOp, g_prep: CoinOp,
                             layout: Optional[Layout] = None) -> WalkProgram:
    layout = _layout3(layout)
    for name, op in (("u_coin", u_coin), ("g_prep", g_prep)):
        if op.unitarity_error() > 1e-10:
            raise InvalidArgument(f"{name} is not unitary")
    g = WalkProgram((Coin(g_prep),))
    g_dag = WalkProgram((Coin(g_prep.dagger()),))
    return concat([_h(2, layout), _h(3, layout), g, controlled_powers(u_coin, layout),
                   g_dag, inverse_qft2(layout), g], name="phase-estimation")


def register_estimate(q2: int, q3: int) -> float:
    return (q2 + 2 * q3) / 4


def run_phase_estimation(u_coin: CoinOp, g_prep: CoinOp,
                         layout: Optional[Layout] = None) -> PhaseEstimate:
    layout = _layout3(layout)
    prog = phase_estimation_program(u_coin, g_prep, layout)
    final = run_program(init_state(layout), prog)
    dist: dict[float, float] = {register_estimate(a, b): 0.0 for a in (0, 1) for b in (0, 1)}
    registers: dict[str, float] = {}
    for bits, p in measure_all(final).items():
        dist[register_estimate(int(bits[1]), int(bits[2]))] += p
        registers[bits[1:]] = registers.get(bits[1:], 0.0) + p
    best = max(dist, key=dist.get)
    reg = max(registers, key=registers.get)
    # for an eigenvector input the coin always returns to G|0>
    amps = qubit_amplitudes(final).reshape(2, 4)
    coin = g_prep.matrix[:, 0]
    restored = bool(abs(np.linalg.norm(coin.conj() @ amps) - 1.0) < 1e-9)
    return PhaseEstimate(best, reg, dist, restored)


def eigen_phase_coin(phi: float) -> CoinOp:
    """``diag(1, e^{2 pi i phi})``: eigenvector |1> with phase phi (fraction of 2 pi)."""
    return phase_coin(2 * math.pi * phi)


# ----------------------------------------------------------------------------
# discrepancy records for the algorithm constructions


def _qft_verdict(literal: bool) -> str:
    from . import oracle

    u = oracle.program_to_matrix(compile_qft3(literal=literal), LAYOUT3)
    if oracle.unitarity_error(u) > 1e-9:
        return "fail (not unitary)"
    ok = oracle.equiv_up_to_phase(oracle.to_qubit_basis(u, LAYOUT3), oracle.dft(3)).equal
    return "pass" if ok else "fail"


def algorithm_records() -> tuple[DiscrepancyRecord, ...]:
    qft = DiscrepancyRecord(
        "QFT3", "qft-branches", {"gray": _qft_verdict(True)},
        "branches keyed on the input pair; QFT_01 gains the qubit-2 pi/2 phase; "
        "Phi read as a phase gate on the qubit last Hadamard-ed; final swap keyed on the current vertex",
        "gray",
    )
    qpe = DiscrepancyRecord(
        "QPE_inverse_qft", "qpe-v1-v2", {"gray": "fail (no reading gives a deterministic estimate)"},
        "V1 realized as H2; V2 as a -pi/2 phase on the |11> vertex followed by H3; "
        "register read bit-reversed",
        "gray",
    )
    grover = DiscrepancyRecord(
        "GROVER_iterations", "grover-iteration-count", {"gray": "ambiguous (ceil gives 3)"},
        "two iterations (floor of pi/4 sqrt 8)", "gray",
    )
    return (qft, qpe, grover)
