import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkqc.hilbert import (
    Convention,
    InvalidArgument,
    InvalidState,
    WalkState,
    basis_index,
    bits_to_position,
    decode_index,
    init_state,
    make_layout,
    measure_all,
    position_to_bits,
    qubit_amplitudes,
    state_from_qubits,
)


@pytest.mark.parametrize("n, sizes", [(2, (2,)), (3, (4,)), (4, (4, 2)), (5, (4, 4)), (6, (4, 4, 2)), (7, (4, 4, 4))])
def test_graph_sizes(n, sizes):
    lay = make_layout(n)
    assert lay.graph_sizes == sizes
    assert int(np.prod(sizes)) == 2 ** (n - 1)
    assert lay.dim == 2 ** n
    assert lay.mapping_convention is Convention.GRAY


def test_layout_rejects_small_n():
    with pytest.raises(InvalidArgument):
        make_layout(1)


def test_qubit_levels():
    lay = make_layout(6)
    assert [lay.level_of(q) for q in range(1, 7)] == [0, 1, 1, 2, 2, 3]
    # the tail qubit of an even layout sits alone on the 2-site graph
    assert lay.size_of_level(lay.level_of(6)) == 2


def test_basis_index_examples():
    assert basis_index(0, (0,), make_layout(3)) == 0
    assert basis_index(1, (0,), make_layout(3)) == 4
    assert basis_index(1, (3, 1), make_layout(4)) == 15


def test_basis_index_range_check():
    with pytest.raises(InvalidArgument):
        basis_index(0, (4,), make_layout(3))


@pytest.mark.parametrize("n", range(2, 9))
def test_basis_index_bijection(n):
    lay = make_layout(n)
    seen = set()
    for coin in (0, 1):
        for pos in lay.positions():
            i = basis_index(coin, pos, lay)
            assert decode_index(i, lay) == (coin, pos)
            seen.add(i)
    assert seen == set(range(lay.dim))


def test_position_to_bits():
    assert position_to_bits(2, 4, Convention.GRAY) == (1, 1)
    assert position_to_bits(2, 4, Convention.BINARY) == (1, 0)
    for conv in Convention:
        assert position_to_bits(0, 4, conv) == (0, 0)
    assert position_to_bits(1, 2) == 1


@pytest.mark.parametrize("conv", list(Convention))
def test_bit_maps_are_bijections(conv):
    pairs = [position_to_bits(m, 4, conv) for m in range(4)]
    assert sorted(pairs) == list(itertools.product((0, 1), repeat=2))
    assert [bits_to_position(b, 4, conv) for b in pairs] == [0, 1, 2, 3]


def test_position_to_bits_range():
    with pytest.raises(InvalidArgument):
        position_to_bits(4, 4)
    with pytest.raises(InvalidArgument):
        position_to_bits(0, 3)


def test_init_state():
    assert np.argmax(init_state(make_layout(3)).amplitudes) == 0
    s = init_state(make_layout(3), coin=1, positions=(2,))
    assert s.amplitudes[6] == 1 and np.count_nonzero(s.amplitudes) == 1
    assert init_state(make_layout(5)).amplitudes.shape == (32,)


def test_measure_examples():
    assert measure_all(init_state(make_layout(3))) == pytest.approx({k: float(k == "000") for k in
                                                                     ("000", "001", "010", "011",
                                                                      "100", "101", "110", "111")})
    uniform = WalkState(make_layout(3), np.full(8, 1 / np.sqrt(8)))
    assert all(p == pytest.approx(0.125) for p in measure_all(uniform).values())


def test_measure_uses_gray_bits():
    # vertex 2 holds bits 11 on the default layout
    probs = measure_all(init_state(make_layout(3), coin=1, positions=(2,)))
    assert probs["111"] == 1.0


def test_measure_rejects_unnormalized():
    with pytest.raises(InvalidState):
        measure_all(WalkState(make_layout(2), np.array([1, 1, 0, 0])))


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 2 ** 32 - 1))
def test_measure_sums_to_one(n, seed):
    rng = np.random.default_rng(seed)
    lay = make_layout(n)
    v = rng.normal(size=lay.dim) + 1j * rng.normal(size=lay.dim)
    probs = measure_all(WalkState(lay, v / np.linalg.norm(v)))
    assert abs(sum(probs.values()) - 1) < 1e-12
    assert len(probs) == lay.dim


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 2 ** 32 - 1))
def test_qubit_amplitudes_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    lay = make_layout(n)
    v = rng.normal(size=lay.dim) + 1j * rng.normal(size=lay.dim)
    assert np.array_equal(qubit_amplitudes(state_from_qubits(lay, v)), v)


def test_state_dump_roundtrip():
    s = init_state(make_layout(4), coin=1, positions=(3, 1))
    back = WalkState.load(s.dump())
    assert back.layout == s.layout
    assert np.array_equal(back.amplitudes, s.amplitudes)
