import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkqc import oracle, qec
from walkqc.gates import CNOT, GateSpec, H
from walkqc.hilbert import InvalidArgument, make_layout
from walkqc.walkops import run_program

from conftest import qubit_unitary


@pytest.mark.parametrize("name", qec.CODE_NAMES)
def test_code_corrects_its_errors(name):
    result = qec.sweep(name)
    assert result.passed
    assert result.worst >= 1 - 1e-9


def test_sweep_sizes():
    assert len(qec.get_code("bitflip").correctable) == 4
    assert len(qec.get_code("phaseflip").correctable) == 4
    assert len(qec.get_code("five-one").correctable) == 16
    assert len(qec.sweep("five-one").runs) == 16 * 6


def test_phaseflip_does_not_correct_bitflips():
    res = qec.sweep("phaseflip", [qec.PauliError(2, "X")])
    assert res.worst < 0.5


def test_five_one_fails_on_two_errors():
    code = qec.get_code("five-one")
    worst = min(qec.run_code(code, v, (qec.PauliError(1, "X"), qec.PauliError(2, "X"))).fidelity
                for v in qec.LOGICAL_TEST_STATES.values())
    assert worst < 0.5


def test_bitflip_encoder_is_repetition():
    code = qec.get_code("bitflip")
    lay = code.layout
    u = qubit_unitary(code.encode, lay)
    psi = np.zeros(8, complex)
    psi[0], psi[4] = 0.6, 0.8
    out = u @ psi
    assert out[0] == pytest.approx(0.6) and out[7] == pytest.approx(0.8)


def test_five_one_knill_laflamme():
    # Knill-Laflamme condition for every pair of single-qubit Paulis
    code = qec.get_code("five-one")
    lay = code.layout
    u = qubit_unitary(code.encode, lay)
    basis = u[:, [0, 16]]
    ops = [np.eye(32)] + [oracle.reference_gate_matrix(GateSpec(k, (q,)), 5)
                          for q in range(1, 6) for k in "XYZ"]
    for a in ops:
        for b in ops:
            m = basis.conj().T @ a.conj().T @ b @ basis
            assert abs(m[0, 1]) < 1e-10 and abs(m[0, 0] - m[1, 1]) < 1e-10


def test_recovery_table_complete_and_unique():
    table = qec.five_one_recovery_table()
    assert len(table) == 15
    assert all(any(s) and len(s) == 4 for s in table)
    assert set(table.values()) <= {"I", "X", "Y", "Z"}


def test_propagate_pauli_single_gates():
    assert qec.propagate_pauli([H(1)], 2, qec.PauliError(1, "X")) == ((0, 0), (1, 0))
    assert qec.propagate_pauli([CNOT(1, 2)], 2, qec.PauliError(1, "X")) == ((1, 1), (0, 0))
    assert qec.propagate_pauli([CNOT(1, 2)], 2, qec.PauliError(2, "Z")) == ((0, 0), (1, 1))


def test_pauli_error_validation():
    with pytest.raises(InvalidArgument):
        qec.PauliError(1, "W")
    with pytest.raises(InvalidArgument):
        qec.PauliError(0, "X")
    with pytest.raises(InvalidArgument):
        qec.get_code("steane")
    assert str(qec.NO_ERROR) == "I" and str(qec.PauliError(3, "Y")) == "Y3"


def test_coin_fidelity():
    lay = make_layout(3)
    s = qec.logical_state(lay, (1, 1j))
    assert qec.coin_fidelity(s, (1, 1j)) == pytest.approx(1)
    assert qec.coin_fidelity(s, (1, -1j)) == pytest.approx(0, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(re=st.floats(-1, 1), im=st.floats(-1, 1), q=st.integers(1, 5), kind=st.sampled_from("XYZ"))
def test_five_one_random_logical(re, im, q, kind):
    v = np.array([re + 1j * im, 0.5 - 0.25j])
    run = qec.run_code(qec.get_code("five-one"), v, (qec.PauliError(q, kind),))
    assert run.fidelity >= 1 - 1e-9


def test_decode_without_error_restores_state():
    code = qec.get_code("five-one")
    s = qec.logical_state(code.layout, (0.6, 0.8j))
    out = run_program(run_program(s, code.encode), code.decode)
    assert np.allclose(out.amplitudes, s.amplitudes)


def test_bitflip_encodes_plus_as_ghz():
    code = qec.get_code("bitflip")
    out = qubit_unitary(code.encode, code.layout) @ (np.kron([1, 1], np.eye(4)[0]) / np.sqrt(2))
    assert np.allclose(out, (np.eye(8)[0] + np.eye(8)[7]) / np.sqrt(2))


def test_phaseflip_encodes_zero_as_plus_plus_plus():
    code = qec.get_code("phaseflip")
    out = qubit_unitary(code.encode, code.layout)[:, 0]
    assert np.allclose(out, np.full(8, 8 ** -0.5))


def test_five_one_identity_on_twelve_states():
    code = qec.get_code("five-one")
    angles = [(t, p) for t in (0, np.pi / 3, np.pi / 2, 2 * np.pi / 3) for p in (0, 2.1, 4.2)]
    for t, p in angles:
        v = (np.cos(t / 2), np.exp(1j * p) * np.sin(t / 2))
        assert qec.run_code(code, v).fidelity == pytest.approx(1, abs=1e-12)


def test_inject_pauli_error_examples():
    lay = make_layout(3)
    s = qec.logical_state(lay, (1, 0))
    assert qec.coin_fidelity(qec.inject_pauli_error(s, qec.PauliError(1, "X")), (0, 1)) == pytest.approx(1)
    plus = qec.logical_state(lay, (1, 1))
    assert qec.coin_fidelity(qec.inject_pauli_error(plus, qec.PauliError(1, "Z")), (1, -1)) == pytest.approx(1)
    y = qec.PauliError(2, "Y")
    twice = qec.inject_pauli_error(qec.inject_pauli_error(plus, y), y)
    assert oracle.equiv_up_to_phase(twice.amplitudes, plus.amplitudes).equal
