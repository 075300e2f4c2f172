import numpy as np
import pytest

from walkqc import oracle


def qubit_unitary(program, layout):
    return oracle.to_qubit_basis(oracle.program_to_matrix(program, layout), layout)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
