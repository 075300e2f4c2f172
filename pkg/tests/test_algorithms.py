import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkqc import algorithms as alg
from walkqc import oracle
from walkqc.hilbert import InvalidArgument, init_state, make_layout
from walkqc.walkops import PAULI_X, coin_matrix, concat, run_program

from conftest import qubit_unitary

L3 = alg.LAYOUT3
TARGETS = ["".join(b) for b in itertools.product("01", repeat=3)]


def u3(prog):
    return qubit_unitary(prog, L3)


# ----------------------------------------------------------------------------
# Grover


@pytest.mark.parametrize("target", TARGETS)
def test_grover_two_iterations(target):
    run = alg.run_grover(target, 2)
    assert abs(run.success_probability - 0.9453) <= 0.0005
    # sin^2(5 theta / 2) with sin(theta / 2) = 1/sqrt(8) is exactly 121/128
    assert run.success_probability == pytest.approx(121 / 128, abs=1e-12)


@pytest.mark.parametrize("target", TARGETS)
def test_grover_history_matches_closed_form(target):
    run = alg.run_grover(target, 3)
    for t, p in enumerate(run.history):
        assert abs(p - alg.grover_closed_form(t)) < 1e-10


def test_grover_closed_form_values():
    assert alg.grover_closed_form(0) == pytest.approx(1 / 8)
    # frozen oracle value for one iteration
    assert alg.grover_closed_form(1) == pytest.approx(25 / 32, abs=1e-12)
    assert alg.grover_closed_form(2) == pytest.approx(121 / 128, abs=1e-12)


@pytest.mark.parametrize("target", TARGETS)
def test_oracle_marks_target(target):
    u = u3(alg.grover_oracle(target))
    ref = np.eye(8)
    ref[int(target, 2), int(target, 2)] = -1
    assert oracle.equiv_up_to_phase(u, ref).equal


def test_diffusion_reflects_about_zero():
    ref = -np.eye(8)
    ref[0, 0] = 1
    assert oracle.equiv_up_to_phase(u3(alg.grover_diffusion()), ref).equal


@pytest.mark.parametrize("prog", [alg.grover_oracle("101"), alg.grover_diffusion(), alg.grover_hadamards()])
def test_involutions(prog):
    assert oracle.equiv_up_to_phase(u3(concat([prog, prog])), np.eye(8)).equal


def test_superposition_is_uniform():
    h = oracle.H_MAT
    assert oracle.equiv_up_to_phase(u3(alg.grover_superposition()), np.kron(np.kron(h, h), h)).equal


@pytest.mark.parametrize("bad", ["01", "0112", "abc", ""])
def test_grover_bad_target(bad):
    with pytest.raises(InvalidArgument):
        alg.run_grover(bad)


def test_grover_bad_iterations_and_layout():
    with pytest.raises(InvalidArgument):
        alg.run_grover("000", -1)
    with pytest.raises(InvalidArgument):
        alg.grover_program("000", layout=make_layout(4))


# ----------------------------------------------------------------------------
# swaps and QFT


def test_coin_swap_is_swap13():
    assert oracle.equiv_up_to_phase(u3(alg.coin_swap()), oracle.swap(1, 3, 3)).equal


def test_controlled_swap_is_fredkin():
    assert np.allclose(u3(alg.controlled_swap()), oracle.fredkin(1, 2, 3, 3))


def test_qft_matrix_is_dft():
    eq = oracle.equiv_up_to_phase(u3(alg.compile_qft3()), oracle.dft(3))
    assert eq.equal and eq.error < 1e-10


def test_qft_literal_reading_fails():
    u = u3(alg.compile_qft3(literal=True))
    assert not oracle.equiv_up_to_phase(u, oracle.dft(3)).equal


@pytest.mark.parametrize("x", range(8))
def test_qft_output_columns(x):
    assert oracle.equiv_up_to_phase(alg.qft_output(x), oracle.dft(3)[:, x]).equal


def test_qft_output_range():
    with pytest.raises(InvalidArgument):
        alg.qft_output(8)


# ----------------------------------------------------------------------------
# phase estimation


@pytest.mark.parametrize("phi", [0, 0.25, 0.5, 0.75])
def test_qpe_exact_phases(phi):
    est = alg.run_phase_estimation(alg.eigen_phase_coin(phi), PAULI_X)
    assert est.phi_estimate == phi
    assert abs(est.probability - 1) < 1e-10
    assert est.coin_restored


def test_qpe_third_mode():
    est = alg.run_phase_estimation(alg.eigen_phase_coin(1 / 3), PAULI_X)
    assert est.phi_estimate == 0.25
    assert max(est.distribution.values()) == est.probability
    assert est.coin_restored


def random_unitary(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), k=st.integers(0, 3), other=st.floats(0, 1))
def test_qpe_any_eigenbasis(seed, k, other):
    # U = G diag(e^{2 pi i phi}, e^{2 pi i other}) G^dag with G|0> the eigenvector
    g = random_unitary(np.random.default_rng(seed))
    phi = k / 4
    u = g @ np.diag([np.exp(2j * np.pi * phi), np.exp(2j * np.pi * other)]) @ g.conj().T
    est = alg.run_phase_estimation(coin_matrix(u), coin_matrix(g))
    assert est.phi_estimate == phi
    assert abs(est.probability - 1) < 1e-10
    assert est.coin_restored


@settings(max_examples=25, deadline=None)
@given(phi=st.floats(0, 1, exclude_max=True))
def test_qpe_distribution_is_normalized(phi):
    est = alg.run_phase_estimation(alg.eigen_phase_coin(phi), PAULI_X)
    assert sum(est.distribution.values()) == pytest.approx(1, abs=1e-12)
    # the mode is never further than a quarter turn from the true phase
    d = abs(est.phi_estimate - phi)
    assert min(d, 1 - d) <= 0.25 + 1e-12


def test_register_estimate_bit_reversed():
    assert [alg.register_estimate(a, b) for a, b in ((0, 0), (1, 0), (0, 1), (1, 1))] == [0, 0.25, 0.5, 0.75]


def test_qpe_rejects_non_unitary():
    with pytest.raises(InvalidArgument):
        alg.phase_estimation_program(coin_matrix([[1, 1], [0, 1]]), PAULI_X)


def test_algorithm_records():
    recs = {r.construction: r for r in alg.algorithm_records()}
    assert set(recs) == {"QFT3", "QPE_inverse_qft", "GROVER_iterations"}
    assert recs["QFT3"].literal_verdict["gray"].startswith("fail")


def test_qft_examples():
    assert np.allclose(alg.qft_output(0), np.full(8, 8 ** -0.5))
    l = np.arange(8)
    assert oracle.equiv_up_to_phase(alg.qft_output(4), np.exp(2j * np.pi * 4 * l / 8) / np.sqrt(8)).equal
    u = u3(alg.compile_qft3())
    assert np.allclose(np.abs(u), 8 ** -0.5)
    assert oracle.unitarity_error(u) < 1e-12


def test_qpe_trivial_unitary():
    eye = coin_matrix(np.eye(2))
    est = alg.run_phase_estimation(eye, eye)
    assert est.phi_estimate == 0 and abs(est.probability - 1) < 1e-10


def test_controlled_swap_examples():
    # Gray vertex 1 holds 01, vertex 3 holds 10
    out = run_program(init_state(L3, 1, (1,)), alg.controlled_swap())
    assert abs(out.amplitudes[4 + 3]) == pytest.approx(1)
    out = run_program(init_state(L3, 0, (1,)), alg.controlled_swap())
    assert abs(out.amplitudes[1]) == pytest.approx(1)


def test_grover_target_011_vertex():
    # 011 is coin 0 on Gray vertex 2
    u = oracle.program_to_matrix(alg.grover_oracle("011"), L3)
    assert np.allclose(np.diag(u), [1, 1, -1, 1, 1, 1, 1, 1])
