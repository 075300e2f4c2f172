"""Hilbert-space layout of an N-qubit-equivalent walk on a chain of closed graphs.

The walker's coin is qubit 1.  Every four-site cycle carries two qubits and an
optional trailing two-site graph carries the last qubit when N is even.  Basis
indices put the coin first and the graphs in order, first graph most
significant, so the state vector reshapes to ``(2, *graph_sizes)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

NORM_TOL = 1e-12
MEASURE_TOL = 1e-9


class InvalidArgument(ValueError):
    """Raised for out-of-range layouts, positions, levels or filters."""


class InvalidState(ValueError):
    """Raised when a state is not normalized."""


class Convention(str, enum.Enum):
    """Vertex-to-bit-pair correspondence on a four-site graph."""

    GRAY = "gray"
    BINARY = "binary"


_BITS = {
    Convention.GRAY: ((0, 0), (0, 1), (1, 1), (1, 0)),
    Convention.BINARY: ((0, 0), (0, 1), (1, 0), (1, 1)),
}


def position_to_bits(m: int, graph_size: int, convention: Convention = Convention.GRAY):
    """Qubit bits held by vertex ``m``.

    Returns a ``(first, second)`` pair for a four-site graph and a single bit
    for the two-site tail graph.
    """
    if graph_size not in (2, 4):
        raise InvalidArgument(f"graph size must be 2 or 4, got {graph_size}")
    if not 0 <= m < graph_size:
        raise InvalidArgument(f"vertex {m} out of range for a {graph_size}-site graph")
    if graph_size == 2:
        return m
    return _BITS[Convention(convention)][m]


def bits_to_position(bits, graph_size: int, convention: Convention = Convention.GRAY) -> int:
    if graph_size == 2:
        if bits not in (0, 1):
            raise InvalidArgument(f"bad bit {bits!r}")
        return int(bits)
    try:
        return _BITS[Convention(convention)].index(tuple(bits))
    except ValueError:
        raise InvalidArgument(f"bad bit pair {bits!r}") from None


@dataclass(frozen=True)
class Layout:
    num_qubits: int
    graph_sizes: tuple[int, ...]
    mapping_convention: Convention = Convention.GRAY

    def __post_init__(self):
        n = self.num_qubits
        if n < 2:
            raise InvalidArgument(f"need at least 2 qubits, got {n}")
        if tuple(self.graph_sizes) != _graph_sizes(n):
            raise InvalidArgument(f"graph sizes {self.graph_sizes} do not fit N={n}")
        object.__setattr__(self, "mapping_convention", Convention(self.mapping_convention))

    @property
    def num_graphs(self) -> int:
        return len(self.graph_sizes)

    @property
    def dim(self) -> int:
        return 2 ** self.num_qubits

    @property
    def position_dim(self) -> int:
        return 2 ** (self.num_qubits - 1)

    @property
    def shape(self) -> tuple[int, ...]:
        return (2, *self.graph_sizes)

    def level_of(self, qubit: int) -> int:
        """1-based graph level holding ``qubit`` (0 for the coin)."""
        self.check_qubit(qubit)
        return qubit // 2

    def slot_of(self, qubit: int) -> int:
        """Which bit of its graph the qubit is: 0 = first (even qubit), 1 = second."""
        self.check_qubit(qubit)
        if qubit == 1:
            raise InvalidArgument("qubit 1 is the coin")
        if self.graph_sizes[self.level_of(qubit) - 1] == 2:
            return 0
        return qubit % 2

    def size_of_level(self, level: int) -> int:
        self.check_level(level)
        return self.graph_sizes[level - 1]

    def check_qubit(self, qubit: int) -> None:
        if not 1 <= qubit <= self.num_qubits:
            raise InvalidArgument(f"qubit {qubit} out of range 1..{self.num_qubits}")

    def check_level(self, level: int) -> None:
        if not 1 <= level <= self.num_graphs:
            raise InvalidArgument(f"level {level} out of range 1..{self.num_graphs}")

    def with_convention(self, convention: Convention) -> "Layout":
        return Layout(self.num_qubits, self.graph_sizes, Convention(convention))

    def positions(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(s) for s in self.graph_sizes))

    def describe(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "graph_sizes": list(self.graph_sizes),
            "mapping_convention": self.mapping_convention.value,
        }


def _graph_sizes(n: int) -> tuple[int, ...]:
    if n % 2:
        return (4,) * ((n - 1) // 2)
    return (4,) * ((n - 2) // 2) + (2,)


def make_layout(n: int, convention: Convention = Convention.GRAY) -> Layout:
    if n < 2:
        raise InvalidArgument(f"need at least 2 qubits, got {n}")
    return Layout(n, _graph_sizes(n), Convention(convention))


def basis_index(coin: int, positions, layout: Layout) -> int:
    if coin not in (0, 1):
        raise InvalidArgument(f"coin must be 0 or 1, got {coin}")
    positions = tuple(positions)
    if len(positions) != layout.num_graphs:
        raise InvalidArgument(f"expected {layout.num_graphs} positions, got {len(positions)}")
    value = 0
    for m, size in zip(positions, layout.graph_sizes):
        if not 0 <= m < size:
            raise InvalidArgument(f"vertex {m} out of range for a {size}-site graph")
        value = value * size + m
    return coin * layout.position_dim + value


def decode_index(index: int, layout: Layout) -> tuple[int, tuple[int, ...]]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < layout.dim:
        raise InvalidArgument(f"index {index} out of range")
    coin, rest = divmod(index, layout.position_dim)
    positions = []
    for size in reversed(layout.graph_sizes):
        rest, m = divmod(rest, size)
        positions.append(m)
    return coin, tuple(reversed(positions))


def walk_to_qubit_bits(coin: int, positions, layout: Layout) -> tuple[int, ...]:
    """Qubit bit string (qubit 1 first) of a walk basis label."""
    bits = [coin]
    for m, size in zip(positions, layout.graph_sizes):
        b = position_to_bits(m, size, layout.mapping_convention)
        bits.extend(b if size == 4 else (b,))
    return tuple(bits)


def qubit_bits_to_walk(bits, layout: Layout) -> tuple[int, tuple[int, ...]]:
    bits = tuple(int(b) for b in bits)
    if len(bits) != layout.num_qubits:
        raise InvalidArgument(f"expected {layout.num_qubits} bits")
    positions, i = [], 1
    for size in layout.graph_sizes:
        if size == 4:
            positions.append(bits_to_position(bits[i:i + 2], 4, layout.mapping_convention))
            i += 2
        else:
            positions.append(bits[i])
            i += 1
    return bits[0], tuple(positions)


def walk_to_qubit_index(index: int, layout: Layout) -> int:
    coin, positions = decode_index(index, layout)
    value = 0
    for b in walk_to_qubit_bits(coin, positions, layout):
        value = 2 * value + b
    return value


@dataclass
class WalkState:
    layout: Layout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.layout.dim:
            raise InvalidArgument(f"need {self.layout.dim} amplitudes, got {amps.shape[0]}")
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.layout.shape)

    def copy(self) -> "WalkState":
        return WalkState(self.layout, self.amplitudes.copy())

    def dump(self) -> dict:
        return {
            "layout": self.layout.describe(),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def load(cls, data: dict) -> "WalkState":
        desc = data["layout"]
        layout = make_layout(desc["num_qubits"], Convention(desc.get("mapping_convention", "gray")))
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(layout, amps)


def init_state(layout: Layout, coin: int = 0, positions=None) -> WalkState:
    if positions is None:
        positions = (0,) * layout.num_graphs
    amps = np.zeros(layout.dim, dtype=np.complex128)
    amps[basis_index(coin, positions, layout)] = 1.0
    return WalkState(layout, amps)


def state_from_qubits(layout: Layout, qubit_amplitudes) -> WalkState:
    """Walk state whose qubit-basis amplitudes (qubit 1 most significant) are given."""
    q = np.asarray(qubit_amplitudes, dtype=np.complex128).reshape(-1)
    if q.shape[0] != layout.dim:
        raise InvalidArgument(f"need {layout.dim} amplitudes")
    amps = np.empty_like(q)
    for i in range(layout.dim):
        amps[i] = q[walk_to_qubit_index(i, layout)]
    return WalkState(layout, amps)


def qubit_amplitudes(state: WalkState) -> np.ndarray:
    """Amplitudes re-indexed into the qubit basis."""
    layout = state.layout
    out = np.empty_like(state.amplitudes)
    for i in range(layout.dim):
        out[walk_to_qubit_index(i, layout)] = state.amplitudes[i]
    return out


def measure_all(state: WalkState) -> dict[str, float]:
    """Born probabilities keyed by qubit bit string, coin bit first."""
    norm = state.norm()
    if abs(norm - 1.0) > MEASURE_TOL:
        raise InvalidState(f"state norm {norm!r} deviates from 1")
    layout = state.layout
    probs = np.abs(state.amplitudes) ** 2
    out = {}
    for i, p in enumerate(probs):
        coin, positions = decode_index(i, layout)
        key = "".join(map(str, walk_to_qubit_bits(coin, positions, layout)))
        out[key] = float(p)
    return dict(sorted(out.items()))
