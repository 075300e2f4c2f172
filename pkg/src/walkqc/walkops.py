"""Walk primitives: coins, conditional shifts, position phases and branch selection.

A :class:`WalkProgram` is an ordered tuple of instructions.  Position filters are
conjunctions of per-graph allowed vertex sets.  A :class:`Select` applies
several bodies to mutually exclusive parts of the input (the
``sum_b U_b |b><b|`` position-dependent operators); a body may move amplitude
anywhere, so only the whole Select is required to be unitary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Union

import numpy as np

from .hilbert import InvalidArgument, InvalidState, Layout, WalkState

UNITARY_TOL = 1e-10
RUN_NORM_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class CoinOp:
    """A 2x2 coin unitary, optionally remembering its SU(2) angles."""

    matrix: np.ndarray
    params: Optional[tuple[float, float, float]] = None
    label: Optional[str] = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise InvalidArgument(f"coin must be 2x2, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def unitarity_error(self) -> float:
        return float(np.abs(self.matrix.conj().T @ self.matrix - IDENTITY).max())

    def is_diagonal(self) -> bool:
        return bool(abs(self.matrix[0, 1]) < 1e-15 and abs(self.matrix[1, 0]) < 1e-15)

    def dagger(self) -> "CoinOp":
        return CoinOp(self.matrix.conj().T)

    def __matmul__(self, other: "CoinOp") -> "CoinOp":
        return CoinOp(self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, CoinOp) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


def coin_su2(xi: float, zeta: float, theta: float) -> CoinOp:
    """The general two-state coin.

    ``C(0, 0, pi/4)`` is already the normalized Hadamard; the displayed
    ``[[1, 1], [1, -1]]`` form elsewhere is the same matrix up to 1/sqrt(2).
    """
    m = np.array(
        [
            [np.exp(1j * xi) * np.cos(theta), np.exp(1j * zeta) * np.sin(theta)],
            [np.exp(-1j * zeta) * np.sin(theta), -np.exp(-1j * xi) * np.cos(theta)],
        ],
        dtype=np.complex128,
    )
    return CoinOp(m, params=(float(xi), float(zeta), float(theta)))


def coin_matrix(matrix, label: Optional[str] = None) -> CoinOp:
    return CoinOp(np.asarray(matrix, dtype=np.complex128), label=label)


HADAMARD = coin_su2(0.0, 0.0, np.pi / 4)
PAULI_X = coin_matrix(SIGMA_X, "X")
PAULI_Z = coin_matrix(SIGMA_Z, "Z")
# N0 = C(0,0,pi) and N1 = sigma_z are the Grover marking coins.
N0 = coin_su2(0.0, 0.0, np.pi)
N1 = PAULI_Z


def phase_coin(phi: float) -> CoinOp:
    return coin_matrix(np.diag([1.0, np.exp(1j * phi)]), f"P({phi!r})")


@dataclass(frozen=True)
class PositionFilter:
    """Per-graph allowed vertex sets (``None`` = any) and an optional coin value.

    The coin constraint is only meaningful on Select branches.
    """

    allowed: tuple[Optional[frozenset], ...] = ()
    coin: Optional[int] = None

    @classmethod
    def on(cls, layout_or_graphs, coin: Optional[int] = None, **levels) -> "PositionFilter":
        """Build a filter from ``level_<j>=vertices`` keywords."""
        n = layout_or_graphs if isinstance(layout_or_graphs, int) else layout_or_graphs.num_graphs
        allowed: list[Optional[frozenset]] = [None] * n
        for key, verts in levels.items():
            j = int(key.split("_")[1])
            if not 1 <= j <= n:
                raise InvalidArgument(f"level {j} out of range 1..{n}")
            allowed[j - 1] = frozenset(int(v) for v in verts)
        return cls(tuple(allowed), coin)

    def is_trivial(self) -> bool:
        return self.coin is None and all(a is None for a in self.allowed)

    def restricts(self, level: int) -> bool:
        return level <= len(self.allowed) and self.allowed[level - 1] is not None

    def validate(self, layout: Layout) -> None:
        if self.allowed and len(self.allowed) != layout.num_graphs:
            raise InvalidArgument(
                f"filter has {len(self.allowed)} graph entries, layout has {layout.num_graphs}"
            )
        for a, size in zip(self.allowed, layout.graph_sizes):
            if a is None:
                continue
            if not a:
                raise InvalidArgument("empty vertex set in filter")
            if min(a) < 0 or max(a) >= size:
                raise InvalidArgument(f"filter vertices {sorted(a)} outside a {size}-site graph")
        if self.coin not in (None, 0, 1):
            raise InvalidArgument(f"bad coin constraint {self.coin!r}")

    def position_mask(self, layout: Layout) -> np.ndarray:
        self.validate(layout)
        mask = np.ones(layout.graph_sizes, dtype=bool)
        for j, (a, size) in enumerate(zip(self.allowed, layout.graph_sizes)):
            if a is None:
                continue
            sel = np.zeros(size, dtype=bool)
            sel[list(a)] = True
            shape = [1] * layout.num_graphs
            shape[j] = size
            mask &= sel.reshape(shape)
        return mask

    def full_mask(self, layout: Layout) -> np.ndarray:
        pos = self.position_mask(layout)
        coin = np.ones(2, dtype=bool)
        if self.coin is not None:
            coin[:] = False
            coin[self.coin] = True
        return coin.reshape((2,) + (1,) * layout.num_graphs) & pos[None]

    def matches(self, coin: int, positions) -> bool:
        if self.coin is not None and coin != self.coin:
            return False
        return all(a is None or m in a for a, m in zip(self.allowed, positions))


ANY = PositionFilter()


@dataclass(frozen=True)
class Coin:
    op: CoinOp
    filter: PositionFilter = ANY


@dataclass(frozen=True)
class Shift:
    level: int
    coin: int
    direction: int
    filter: PositionFilter = ANY

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise InvalidArgument(f"direction must be +1 or -1, got {self.direction}")
        if self.coin not in (0, 1):
            raise InvalidArgument(f"shift coin value must be 0 or 1, got {self.coin}")


@dataclass(frozen=True)
class PositionPhase:
    level: int
    phases: tuple[float, ...]
    filter: PositionFilter = ANY


@dataclass(frozen=True)
class GlobalPhase:
    phi: float


@dataclass(frozen=True)
class Branch:
    filter: PositionFilter
    body: tuple = ()


@dataclass(frozen=True)
class Select:
    branches: tuple[Branch, ...]


Instruction = Union[Coin, Shift, PositionPhase, GlobalPhase, Select]


@dataclass(frozen=True)
class WalkProgram:
    instructions: tuple = ()
    name: Optional[str] = None
    # Declared step id per instruction; None means steps are counted greedily.
    steps: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if self.steps is not None and len(self.steps) != len(self.instructions):
            raise InvalidArgument("steps must label every instruction")

    def __add__(self, other: "WalkProgram") -> "WalkProgram":
        steps = None
        if self.steps is not None and other.steps is not None:
            offset = (max(self.steps) + 1) if self.steps else 0
            steps = self.steps + tuple(s + offset for s in other.steps)
        return WalkProgram(self.instructions + other.instructions, None, steps)

    def __len__(self):
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    def named(self, name: str) -> "WalkProgram":
        return WalkProgram(self.instructions, name, self.steps)


def concat(programs: Iterable[WalkProgram], name: Optional[str] = None) -> WalkProgram:
    prog = reduce(lambda a, b: a + b, programs, WalkProgram())
    return prog.named(name) if name else prog


def select(*branches: tuple[PositionFilter, Iterable[Instruction]]) -> Select:
    return Select(tuple(Branch(f, tuple(body)) for f, body in branches))


# ----------------------------------------------------------------------------
# application on the (2, *graph_sizes) tensor


def _check_level(layout: Layout, level: int) -> None:
    try:
        layout.check_level(level)
    except InvalidArgument:
        raise InvalidArgument(f"level {level} out of range 1..{layout.num_graphs}") from None


def _coin_tensor(psi: np.ndarray, layout: Layout, ins: Coin) -> np.ndarray:
    if ins.filter.coin is not None:
        raise InvalidArgument("a coin operation cannot be filtered on the coin value")
    rotated = np.tensordot(ins.op.matrix, psi, axes=([1], [0]))
    if ins.filter.is_trivial():
        return rotated
    mask = ins.filter.position_mask(layout)[None]
    return np.where(mask, rotated, psi)


def _shift_tensor(psi: np.ndarray, layout: Layout, ins: Shift) -> np.ndarray:
    _check_level(layout, ins.level)
    if ins.filter.coin is not None:
        raise InvalidArgument("shift filters take no coin constraint")
    axis = ins.level - 1
    out = psi.copy()
    part = psi[ins.coin]
    mask = ins.filter.position_mask(layout)
    moving = np.where(mask, part, 0)
    # Linear map; collisions add, so a filter on the shifted level can be non-unitary.
    out[ins.coin] = np.where(mask, 0, part) + np.roll(moving, ins.direction, axis=axis)
    return out


def _phase_tensor(psi: np.ndarray, layout: Layout, ins: PositionPhase) -> np.ndarray:
    _check_level(layout, ins.level)
    size = layout.size_of_level(ins.level)
    if len(ins.phases) != size:
        raise InvalidArgument(f"need {size} phases for level {ins.level}, got {len(ins.phases)}")
    shape = [1] * (layout.num_graphs + 1)
    shape[ins.level] = size
    factor = np.exp(1j * np.asarray(ins.phases, dtype=float)).reshape(shape)
    if ins.filter.coin is not None:
        raise InvalidArgument("position phases take no coin constraint")
    if ins.filter.is_trivial():
        return psi * factor
    mask = ins.filter.position_mask(layout)[None]
    return np.where(mask, psi * factor, psi)


def _select_tensor(psi: np.ndarray, layout: Layout, ins: Select) -> np.ndarray:
    covered = np.zeros(layout.shape, dtype=bool)
    out = np.zeros_like(psi)
    for br in ins.branches:
        mask = br.filter.full_mask(layout)
        if (covered & mask).any():
            raise InvalidArgument("select branches overlap")
        covered |= mask
        out += _run_tensor(np.where(mask, psi, 0), layout, br.body)
    return out + np.where(covered, 0, psi)


def _apply_tensor(psi: np.ndarray, layout: Layout, ins) -> np.ndarray:
    if isinstance(ins, Coin):
        return _coin_tensor(psi, layout, ins)
    if isinstance(ins, Shift):
        return _shift_tensor(psi, layout, ins)
    if isinstance(ins, PositionPhase):
        return _phase_tensor(psi, layout, ins)
    if isinstance(ins, GlobalPhase):
        return psi * np.exp(1j * ins.phi)
    if isinstance(ins, Select):
        return _select_tensor(psi, layout, ins)
    raise TypeError(f"not a walk instruction: {ins!r}")


def _run_tensor(psi: np.ndarray, layout: Layout, instructions) -> np.ndarray:
    for ins in instructions:
        psi = _apply_tensor(psi, layout, ins)
    return psi


def apply_instruction(state: WalkState, ins) -> WalkState:
    """Apply one instruction linearly, without unitarity checks."""
    psi = _apply_tensor(state.tensor(), state.layout, ins)
    return WalkState(state.layout, psi.reshape(-1))


def run_program(state: WalkState, program, check_norm: bool = True) -> WalkState:
    instructions = program.instructions if isinstance(program, WalkProgram) else tuple(program)
    psi = _run_tensor(state.tensor(), state.layout, instructions)
    out = WalkState(state.layout, psi.reshape(-1))
    if check_norm:
        drift = abs(out.norm() - state.norm())
        if drift > RUN_NORM_TOL:
            raise InvalidState(f"program changed the norm by {drift:.3e}")
    return out


# ----------------------------------------------------------------------------
# the named operations


def shift_is_permutation(layout: Layout, ins: Shift) -> bool:
    mask = ins.filter.position_mask(layout)
    return bool(np.array_equal(np.roll(mask, ins.direction, axis=ins.level - 1), mask))


def apply_shift(state: WalkState, level: int, coin: int, direction: int,
                filter: PositionFilter = ANY) -> WalkState:
    ins = Shift(level, coin, direction, filter)
    _check_level(state.layout, level)
    filter.validate(state.layout)
    if not shift_is_permutation(state.layout, ins):
        raise InvalidArgument("filtered shift is not a permutation of the basis")
    return apply_instruction(state, ins)


def apply_coin(state: WalkState, coin: CoinOp, filter: PositionFilter = ANY) -> WalkState:
    err = coin.unitarity_error()
    if err > UNITARY_TOL:
        raise InvalidArgument(f"coin is not unitary (deviation {err:.2e})")
    return apply_instruction(state, Coin(coin, filter))


def w_instructions(layout: Layout, level: int, variant: int, direction: int,
                   vertex: Optional[int] = None, shift_coin: Optional[int] = None) -> list:
    """Instruction form of the W operator keyed on the walker's input vertex.

    ``W^0 = corr . S^k . (sigma_x x 1)`` and ``W^1 = corr . S^k . (sigma_z x 1)``
    where ``corr`` flips the coin only at the vertex the walker started from.
    ``shift_coin`` is ``k``; by default it equals the variant.  With ``vertex``
    given, the body for that input vertex is returned unwrapped.
    """
    _check_level(layout, level)
    if variant not in (0, 1):
        raise InvalidArgument("W variant is 0 or 1")
    pre = PAULI_X if variant == 0 else PAULI_Z
    k = variant if shift_coin is None else shift_coin
    size = layout.size_of_level(level)

    def body(m):
        here = PositionFilter.on(layout, **{f"level_{level}": {m}})
        return [Coin(pre), Shift(level, k, direction), Coin(PAULI_X, here)]

    if vertex is not None:
        return body(vertex)
    return [select(*((PositionFilter.on(layout, **{f"level_{level}": {m}}), body(m))
                     for m in range(size)))]


def apply_w(state: WalkState, level: int, variant: int, direction: int,
            shift_coin: Optional[int] = None) -> WalkState:
    """Apply W^variant_{level, direction}.

    Maps basis states to basis states; on superpositions two inputs can land on
    the same output, so it is unitary only on the subspaces the gate compiler
    feeds it.
    """
    out = state
    for ins in w_instructions(state.layout, level, variant, direction, shift_coin=shift_coin):
        out = apply_instruction(out, ins)
    return out


def position_sigma_x(layout: Layout, vertex: int, level: int = 1) -> Coin:
    return Coin(PAULI_X, PositionFilter.on(layout, **{f"level_{level}": {vertex}}))


def apply_position_sigma_x(state: WalkState, vertex: int, level: int = 1) -> WalkState:
    return apply_instruction(state, position_sigma_x(state.layout, vertex, level))


# Direction of the double shift S^0 S^1 per Gray vertex: flipping the second
# bit pairs 0-1 and 2-3, flipping the first bit pairs 0-3 and 1-2.
PAIR_FLIP_DIRECTIONS = {
    "second": (+1, -1, +1, -1),
    "first": (-1, +1, -1, +1),
}


def pair_sigma_x(layout: Layout, level: int, which: str) -> Select:
    _check_level(layout, level)
    if layout.size_of_level(level) != 4:
        raise InvalidArgument("pair sigma_x needs a four-site graph")
    try:
        dirs = PAIR_FLIP_DIRECTIONS[which]
    except KeyError:
        raise InvalidArgument(f"which must be 'first' or 'second', got {which!r}") from None
    branches = []
    for m, d in enumerate(dirs):
        here = PositionFilter.on(layout, **{f"level_{level}": {m}})
        branches.append((here, (Shift(level, 0, d), Shift(level, 1, d))))
    return select(*branches)


def apply_pair_sigma_x(state: WalkState, level: int, which: str) -> WalkState:
    return apply_instruction(state, pair_sigma_x(state.layout, level, which))


# ----------------------------------------------------------------------------
# text format
#
#   SHIFT j=1 k=0 dir=+ filter=[{0,3},*]
#   COIN su2(0.0,0.0,0.7853981633974483) filter=any
#   COIN matrix(1.0,0.0;0.0,0.0;0.0,0.0;-1.0,0.0) filter=any
#   PPHASE j=1 phases=[0.0,1.5707963267948966,0.0,0.0] filter=any
#   GPHASE 1.5707963267948966
#   SELECT
#     BRANCH filter=[{1}] coin=0
#       ...
#     END
#   END
#
# Floats use repr, so the round trip is exact.

TEXT_HEADER = "WALKPROGRAM 1"


def _fmt_filter(f: PositionFilter) -> str:
    if f == ANY:
        out = "filter=any"
    else:
        parts = ["*" if a is None else "{" + ",".join(str(v) for v in sorted(a)) + "}" for a in f.allowed]
        out = "filter=[" + ",".join(parts) + "]"
    if f.coin is not None:
        out += f" coin={f.coin}"
    return out


def _parse_filter(tokens: dict) -> PositionFilter:
    coin = int(tokens["coin"]) if "coin" in tokens else None
    text = tokens.get("filter", "any")
    if text == "any":
        return PositionFilter((), coin)
    if not (text.startswith("[") and text.endswith("]")):
        raise InvalidArgument(f"bad filter {text!r}")
    allowed: list[Optional[frozenset]] = []
    body = text[1:-1]
    i = 0
    while i < len(body):
        if body[i] == "*":
            allowed.append(None)
            i += 1
        elif body[i] == "{":
            j = body.index("}", i)
            inner = body[i + 1:j]
            allowed.append(frozenset(int(v) for v in inner.split(",") if v))
            i = j + 1
        else:
            raise InvalidArgument(f"bad filter {text!r}")
        if i < len(body):
            if body[i] != ",":
                raise InvalidArgument(f"bad filter {text!r}")
            i += 1
    return PositionFilter(tuple(allowed), coin)


def _fmt_coin(op: CoinOp) -> str:
    if op.params is not None:
        return "su2(" + ",".join(repr(float(p)) for p in op.params) + ")"
    cells = [f"{float(z.real)!r},{float(z.imag)!r}" for z in op.matrix.reshape(-1)]
    return "matrix(" + ";".join(cells) + ")"


def _parse_coin(text: str) -> CoinOp:
    if text.startswith("su2(") and text.endswith(")"):
        xi, zeta, theta = (float(v) for v in text[4:-1].split(","))
        return coin_su2(xi, zeta, theta)
    if text.startswith("matrix(") and text.endswith(")"):
        cells = [complex(*(float(v) for v in c.split(","))) for c in text[7:-1].split(";")]
        if len(cells) != 4:
            raise InvalidArgument("matrix coin needs four entries")
        return CoinOp(np.array(cells).reshape(2, 2))
    raise InvalidArgument(f"bad coin {text!r}")


def _fmt_instruction(ins, indent: str) -> list[str]:
    if isinstance(ins, Shift):
        d = "+" if ins.direction > 0 else "-"
        return [f"{indent}SHIFT j={ins.level} k={ins.coin} dir={d} {_fmt_filter(ins.filter)}"]
    if isinstance(ins, Coin):
        return [f"{indent}COIN {_fmt_coin(ins.op)} {_fmt_filter(ins.filter)}"]
    if isinstance(ins, PositionPhase):
        phases = "[" + ",".join(repr(float(p)) for p in ins.phases) + "]"
        return [f"{indent}PPHASE j={ins.level} phases={phases} {_fmt_filter(ins.filter)}"]
    if isinstance(ins, GlobalPhase):
        return [f"{indent}GPHASE {float(ins.phi)!r}"]
    if isinstance(ins, Select):
        lines = [f"{indent}SELECT"]
        for br in ins.branches:
            lines.append(f"{indent}  BRANCH {_fmt_filter(br.filter)}")
            for sub in br.body:
                lines += _fmt_instruction(sub, indent + "    ")
            lines.append(f"{indent}  END")
        lines.append(f"{indent}END")
        return lines
    raise TypeError(f"not a walk instruction: {ins!r}")


def program_to_text(program: WalkProgram) -> str:
    lines = [TEXT_HEADER]
    if program.name is not None:
        lines.append(f"NAME {program.name}")
    if program.steps is not None:
        lines.append("STEPS " + " ".join(str(s) for s in program.steps))
    for ins in program.instructions:
        lines += _fmt_instruction(ins, "")
    return "\n".join(lines) + "\n"


def _keywords(tokens: list[str]) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise InvalidArgument(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _parse_block(lines: list[tuple[int, str]], pos: int, closing: bool):
    out = []
    while pos < len(lines):
        lineno, line = lines[pos]
        op, _, rest = line.partition(" ")
        if op == "END":
            if not closing:
                raise InvalidArgument(f"line {lineno}: unexpected END")
            return out, pos + 1
        if op == "SELECT":
            branches = []
            pos += 1
            while True:
                if pos >= len(lines):
                    raise InvalidArgument("unterminated SELECT")
                lineno, line = lines[pos]
                if line == "END":
                    pos += 1
                    break
                bop, _, brest = line.partition(" ")
                if bop != "BRANCH":
                    raise InvalidArgument(f"line {lineno}: expected BRANCH")
                flt = _parse_filter(_keywords(brest.split()))
                body, pos = _parse_block(lines, pos + 1, True)
                branches.append(Branch(flt, tuple(body)))
            out.append(Select(tuple(branches)))
            continue
        try:
            if op == "GPHASE":
                out.append(GlobalPhase(float(rest)))
            elif op == "COIN":
                coin_text, _, tail = rest.partition(" ")
                out.append(Coin(_parse_coin(coin_text), _parse_filter(_keywords(tail.split()))))
            elif op == "SHIFT":
                kw = _keywords(rest.split())
                d = {"+": 1, "-": -1}[kw["dir"]]
                out.append(Shift(int(kw["j"]), int(kw["k"]), d, _parse_filter(kw)))
            elif op == "PPHASE":
                kw = _keywords(rest.split())
                phases = tuple(float(v) for v in kw["phases"].strip("[]").split(",") if v)
                out.append(PositionPhase(int(kw["j"]), phases, _parse_filter(kw)))
            else:
                raise InvalidArgument(f"unknown instruction {op!r}")
        except (KeyError, ValueError) as exc:
            raise InvalidArgument(f"line {lineno}: cannot parse {line!r} ({exc})") from None
        pos += 1
    if closing:
        raise InvalidArgument("missing END")
    return out, pos


def program_from_text(text: str) -> WalkProgram:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0][1] != TEXT_HEADER:
        raise InvalidArgument(f"missing {TEXT_HEADER!r} header")
    lines = lines[1:]
    name = None
    steps = None
    while lines and lines[0][1].split(" ", 1)[0] in ("NAME", "STEPS"):
        key, _, rest = lines[0][1].partition(" ")
        if key == "NAME":
            name = rest
        else:
            steps = tuple(int(s) for s in rest.split())
        lines = lines[1:]
    instructions, _ = _parse_block(lines, 0, False)
    return WalkProgram(tuple(instructions), name, steps)
