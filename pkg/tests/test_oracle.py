import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkqc import oracle
from walkqc.gates import compile_cnot
from walkqc.hilbert import Convention, InvalidArgument, make_layout
from walkqc.walkops import Coin, HADAMARD, Shift, WalkProgram

P0 = np.diag([1, 0])
P1 = np.diag([0, 1])


def kron(*ms):
    out = np.ones((1, 1))
    for m in ms:
        out = np.kron(out, m)
    return out


def test_single_qubit_matches_kron():
    assert np.allclose(oracle.single_qubit(oracle.H_MAT, 2, 3), kron(np.eye(2), oracle.H_MAT, np.eye(2)))


def test_cnot_matches_projector_form():
    i2, x = np.eye(2), oracle.X_MAT
    assert np.allclose(oracle.cnot(1, 3, 3), kron(P0, i2, i2) + kron(P1, i2, x))
    assert np.allclose(oracle.cnot(3, 1, 3), kron(i2, i2, P0) + kron(x, i2, P1))


def test_toffoli_and_ccz():
    t = oracle.toffoli(2, 3, 1, 3)
    assert t[0b011, 0b111] == 1 and t[0b111, 0b011] == 1
    assert np.allclose(np.diag(oracle.multi_z((1, 2, 3), 3)), [1] * 7 + [-1])


def test_multi_z_polarity():
    d = np.diag(oracle.multi_z((2, 3, 4, 5), 5, (0, 0, 1, 1))).real
    flipped = [i for i in range(32) if d[i] < 0]
    assert flipped == [0b00011, 0b10011]


def test_swap_and_fredkin():
    assert np.allclose(oracle.swap(1, 3, 3) @ oracle.swap(1, 3, 3), np.eye(8))
    f = oracle.fredkin(1, 2, 3, 3)
    assert f[0b110, 0b101] == 1 and f[0b001, 0b001] == 1


def test_dft_is_unitary_and_matches_fft():
    f = oracle.dft(3)
    assert oracle.unitarity_error(f) < 1e-14
    # np.fft uses exp(-2 pi i jk/n); ours is the inverse convention
    assert np.allclose(f, np.fft.ifft(np.eye(8), axis=0) * np.sqrt(8))


def test_bit_reversal():
    r = oracle.bit_reversal(3)
    assert r[0b100, 0b001] == 1 and r[0b010, 0b010] == 1


def test_reference_rejects_unknown():
    class G:
        kind, qubits = "FOO", (1,)
    with pytest.raises(InvalidArgument):
        oracle.reference_gate_matrix(G(), 3)


def test_controlled_rejects_overlap():
    with pytest.raises(InvalidArgument):
        oracle.controlled(oracle.X_MAT, [1], 1, 2)


def test_instruction_matrix_coin_shift():
    lay = make_layout(3)
    u = oracle.instruction_matrix(Coin(HADAMARD), lay)
    assert np.allclose(u, np.kron(oracle.H_MAT, np.eye(4)))
    s = oracle.instruction_matrix(Shift(1, 0, 1), lay)
    assert s[1, 0] == 1 and s[4, 4] == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("conv", list(Convention))
def test_basis_permutation_is_permutation(n, conv):
    p = oracle.basis_permutation(make_layout(n), conv)
    assert oracle.is_permutation(p)


def test_capacity_error():
    with pytest.raises(oracle.CapacityError):
        oracle.program_to_matrix(WalkProgram(), make_layout(oracle.MAX_ORACLE_QUBITS + 1))


@settings(max_examples=40)
@given(gamma=st.floats(-np.pi, np.pi), seed=st.integers(0, 2 ** 32 - 1))
def test_equiv_up_to_phase_recovers_gamma(gamma, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    eq = oracle.equiv_up_to_phase(np.exp(1j * gamma) * q, q)
    assert eq.equal
    assert abs(np.exp(1j * eq.gamma) - np.exp(1j * gamma)) < 1e-10


def test_equiv_detects_difference():
    assert not oracle.equiv_up_to_phase(oracle.H_MAT, oracle.X_MAT)
    assert not oracle.equiv_up_to_phase(np.diag([1, 1j]), np.eye(2))
    with pytest.raises(InvalidArgument):
        oracle.equiv_up_to_phase(np.eye(2), np.eye(4))


def test_matrix_dump_roundtrip():
    u = oracle.dft(2)
    assert np.array_equal(oracle.matrix_load(oracle.matrix_dump(u), 4), u)


def test_program_matrix_examples():
    lay = make_layout(3)
    assert np.array_equal(oracle.program_to_matrix(WalkProgram(), lay), np.eye(8))
    s = oracle.program_to_matrix([Shift(1, 0, 1)], lay)
    assert oracle.is_permutation(s) and int((np.diag(s) == 0).sum()) == 4
    assert oracle.is_permutation(oracle.program_to_matrix(compile_cnot(1, 2, lay), lay))


def test_reference_small_examples():
    assert np.allclose(oracle.single_qubit(oracle.H_MAT, 1, 1), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    c = oracle.cnot(1, 2, 2)
    assert np.array_equal(c, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))


def test_basis_permutation_examples():
    lay = make_layout(3)
    assert oracle.basis_permutation(lay, Convention.GRAY)[3, 2] == 1
    assert oracle.basis_permutation(lay, Convention.BINARY)[2, 2] == 1


def test_equiv_gamma_example():
    u = oracle.dft(2)
    assert oracle.equiv_up_to_phase(np.exp(1j * np.pi / 3) * u, u).gamma == pytest.approx(np.pi / 3)
    assert not oracle.equiv_up_to_phase(np.eye(2), oracle.X_MAT).equal


@settings(max_examples=30)
@given(seed=st.integers(0, 2 ** 32 - 1), g1=st.floats(-3, 3), g2=st.floats(-3, 3))
def test_equiv_is_symmetric_and_transitive(seed, g1, g2):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    a, b, c = q, np.exp(1j * g1) * q, np.exp(1j * (g1 + g2)) * q
    assert oracle.equiv_up_to_phase(a, b).equal and oracle.equiv_up_to_phase(b, a).equal
    assert oracle.equiv_up_to_phase(b, c).equal and oracle.equiv_up_to_phase(a, c).equal
