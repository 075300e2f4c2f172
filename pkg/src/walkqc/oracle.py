"""Dense-matrix oracle.

Matrices are assembled by enumerating basis labels one at a time, sharing no
code path with the tensor simulator in :mod:`walkqc.walkops`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .hilbert import Convention, InvalidArgument, Layout, decode_index, basis_index, walk_to_qubit_bits
from .walkops import Coin, GlobalPhase, PositionPhase, Select, Shift, WalkProgram

MAX_ORACLE_QUBITS = 10
EQUIV_TOL = 1e-10


class CapacityError(RuntimeError):
    """Dense oracle asked for more than ``MAX_ORACLE_QUBITS`` qubits."""


def _labels(layout: Layout):
    return [decode_index(i, layout) for i in range(layout.dim)]


def _passes(filt, coin: int, positions) -> bool:
    if filt.coin is not None and coin != filt.coin:
        return False
    for allowed, m in zip(filt.allowed, positions):
        if allowed is not None and m not in allowed:
            return False
    return True


def instruction_matrix(ins, layout: Layout) -> np.ndarray:
    dim = layout.dim
    labels = _labels(layout)
    u = np.zeros((dim, dim), dtype=np.complex128)
    if isinstance(ins, GlobalPhase):
        return np.exp(1j * ins.phi) * np.eye(dim, dtype=np.complex128)
    if isinstance(ins, Coin):
        c = ins.op.matrix
        for col, (k, pos) in enumerate(labels):
            if not _passes(ins.filter, k, pos):
                u[col, col] = 1.0
                continue
            for out in (0, 1):
                u[basis_index(out, pos, layout), col] += c[out, k]
        return u
    if isinstance(ins, Shift):
        size = layout.graph_sizes[ins.level - 1]
        for col, (k, pos) in enumerate(labels):
            if k == ins.coin and _passes(ins.filter, k, pos):
                moved = list(pos)
                moved[ins.level - 1] = (pos[ins.level - 1] + ins.direction) % size
                u[basis_index(k, moved, layout), col] += 1.0
            else:
                u[col, col] += 1.0
        return u
    if isinstance(ins, PositionPhase):
        for col, (k, pos) in enumerate(labels):
            phase = ins.phases[pos[ins.level - 1]] if _passes(ins.filter, k, pos) else 0.0
            u[col, col] = np.exp(1j * phase)
        return u
    if isinstance(ins, Select):
        rest = np.eye(dim, dtype=np.complex128)
        for br in ins.branches:
            proj = np.zeros((dim, dim), dtype=np.complex128)
            for col, (k, pos) in enumerate(labels):
                if _passes(br.filter, k, pos):
                    proj[col, col] = 1.0
            u += _product(br.body, layout) @ proj
            rest -= proj
        return u + rest
    raise TypeError(f"not a walk instruction: {ins!r}")


def _product(instructions, layout: Layout) -> np.ndarray:
    u = np.eye(layout.dim, dtype=np.complex128)
    for ins in instructions:
        u = instruction_matrix(ins, layout) @ u
    return u


def program_to_matrix(program, layout: Layout) -> np.ndarray:
    """Walk-basis matrix of a program (first instruction acts first)."""
    if layout.num_qubits > MAX_ORACLE_QUBITS:
        raise CapacityError(f"dense oracle limited to {MAX_ORACLE_QUBITS} qubits")
    instructions = program.instructions if isinstance(program, WalkProgram) else tuple(program)
    return _product(instructions, layout)


def basis_permutation(layout: Layout, convention: Optional[Convention] = None) -> np.ndarray:
    """P with ``P[q, w] = 1`` when walk index w carries qubit index q."""
    lay = layout if convention is None else layout.with_convention(convention)
    p = np.zeros((lay.dim, lay.dim))
    for w, (k, pos) in enumerate(_labels(lay)):
        q = int("".join(map(str, walk_to_qubit_bits(k, pos, lay))), 2)
        p[q, w] = 1.0
    return p


def to_qubit_basis(u_walk: np.ndarray, layout: Layout, convention: Optional[Convention] = None) -> np.ndarray:
    p = basis_permutation(layout, convention)
    return p @ u_walk @ p.T


# ----------------------------------------------------------------------------
# reference gates, qubit 1 most significant

H_MAT = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
X_MAT = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y_MAT = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def phase_mat(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(np.complex128)


def single_qubit(mat: np.ndarray, qubit: int, n: int) -> np.ndarray:
    if not 1 <= qubit <= n:
        raise InvalidArgument(f"qubit {qubit} out of range 1..{n}")
    out = np.ones((1, 1), dtype=np.complex128)
    for q in range(1, n + 1):
        out = np.kron(out, mat if q == qubit else np.eye(2))
    return out


def _bits(index: int, n: int) -> list[int]:
    return [(index >> (n - 1 - i)) & 1 for i in range(n)]


def _index(bits) -> int:
    v = 0
    for b in bits:
        v = 2 * v + b
    return v


def controlled(mat: np.ndarray, controls: Sequence[int], target: int, n: int,
               control_values: Optional[Sequence[int]] = None) -> np.ndarray:
    """Multi-controlled single-qubit ``mat``; controls fire on ``control_values`` (default all 1)."""
    if control_values is None:
        control_values = [1] * len(controls)
    qubits = list(controls) + [target]
    if len(set(qubits)) != len(qubits):
        raise InvalidArgument("control and target qubits must be distinct")
    for q in qubits:
        if not 1 <= q <= n:
            raise InvalidArgument(f"qubit {q} out of range 1..{n}")
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        bits = _bits(col, n)
        if all(bits[c - 1] == v for c, v in zip(controls, control_values)):
            t = bits[target - 1]
            for out in (0, 1):
                nb = list(bits)
                nb[target - 1] = out
                u[_index(nb), col] += mat[out, t]
        else:
            u[col, col] = 1.0
    return u


def cnot(control: int, target: int, n: int) -> np.ndarray:
    return controlled(X_MAT, [control], target, n)


def toffoli(c1: int, c2: int, target: int, n: int) -> np.ndarray:
    return controlled(X_MAT, [c1, c2], target, n)


def multi_z(qubits: Sequence[int], n: int, values: Optional[Sequence[int]] = None) -> np.ndarray:
    """Diagonal with -1 where every listed qubit equals its value (default 1)."""
    if values is None:
        values = [1] * len(qubits)
    diag = np.ones(2 ** n, dtype=np.complex128)
    for i in range(2 ** n):
        bits = _bits(i, n)
        if all(bits[q - 1] == v for q, v in zip(qubits, values)):
            diag[i] = -1.0
    return np.diag(diag)


def fredkin(control: int, a: int, b: int, n: int) -> np.ndarray:
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        bits = _bits(col, n)
        if bits[control - 1] == 1:
            bits[a - 1], bits[b - 1] = bits[b - 1], bits[a - 1]
        u[_index(bits), col] = 1.0
    return u


def swap(a: int, b: int, n: int) -> np.ndarray:
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        bits = _bits(col, n)
        bits[a - 1], bits[b - 1] = bits[b - 1], bits[a - 1]
        u[_index(bits), col] = 1.0
    return u


def dft(n: int) -> np.ndarray:
    d = 2 ** n
    a = np.arange(d)
    return np.exp(2j * np.pi * np.outer(a, a) / d) / np.sqrt(d)


def bit_reversal(n: int) -> np.ndarray:
    d = 2 ** n
    p = np.zeros((d, d))
    for i in range(d):
        p[_index(list(reversed(_bits(i, n)))), i] = 1.0
    return p


def reference_gate_matrix(gate, n: int) -> np.ndarray:
    """Reference matrix of a :class:`walkqc.gates.GateSpec`-like object.

    Accepts anything with ``kind`` and ``qubits`` (and ``phi`` for phases).
    """
    kind = gate.kind
    q = gate.qubits
    if kind == "H":
        return single_qubit(H_MAT, q[0], n)
    if kind == "P":
        return single_qubit(phase_mat(gate.phi), q[0], n)
    if kind == "X":
        return single_qubit(X_MAT, q[0], n)
    if kind == "Z":
        return single_qubit(Z_MAT, q[0], n)
    if kind == "Y":
        return single_qubit(Y_MAT, q[0], n)
    if kind == "GPHASE":
        return np.exp(1j * gate.phi) * np.eye(2 ** n, dtype=np.complex128)
    if kind == "CNOT":
        return cnot(q[0], q[1], n)
    if kind == "CZ":
        return multi_z(q, n)
    if kind == "TOFFOLI":
        return toffoli(q[0], q[1], q[2], n)
    if kind in ("CCZ", "CCCZ"):
        return multi_z(q, n, getattr(gate, "values", None))
    if kind == "FREDKIN":
        return fredkin(q[0], q[1], q[2], n)
    if kind == "SWAP":
        return swap(q[0], q[1], n)
    raise InvalidArgument(f"no reference for gate kind {kind!r}")


# ----------------------------------------------------------------------------
# comparisons


@dataclass(frozen=True)
class Equivalence:
    equal: bool
    gamma: Optional[float]
    error: float

    def __bool__(self):
        return self.equal

    def __iter__(self):
        return iter((self.equal, self.gamma))


def equiv_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = EQUIV_TOL) -> Equivalence:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise InvalidArgument(f"shape mismatch {a.shape} vs {b.shape}")
    flat_a, flat_b = a.reshape(-1), b.reshape(-1)
    idx = np.flatnonzero(np.abs(flat_b) > 1e-6)
    if idx.size == 0:
        err = float(np.abs(flat_a).max(initial=0.0))
        return Equivalence(err < tol, 0.0 if err < tol else None, err)
    i = idx[0]
    if abs(flat_a[i]) < 1e-12:
        err = float(np.abs(flat_a - flat_b).max())
        return Equivalence(False, None, max(err, abs(flat_b[i])))
    gamma = float(np.angle(flat_a[i] / flat_b[i]))
    err = float(np.abs(a - np.exp(1j * gamma) * b).max())
    return Equivalence(err < tol, gamma if err < tol else None, err)


def unitarity_error(u: np.ndarray) -> float:
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def is_permutation(u: np.ndarray, tol: float = 1e-12) -> bool:
    mag = np.abs(u)
    ones = np.abs(mag - 1.0) < tol
    zeros = mag < tol
    return bool(np.all(ones | zeros) and np.all(ones.sum(0) == 1) and np.all(ones.sum(1) == 1))


def matrix_dump(u: np.ndarray) -> list:
    """Row-major list of ``[re, im]`` pairs."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(u).reshape(-1)]


def matrix_load(data, dim: int) -> np.ndarray:
    return np.array([complex(r, i) for r, i in data]).reshape(dim, dim)
