import numpy as np
import pytest

from qdcprep.circuit import Circuit, Gate

# (criterion, passed, detail) lines collected by test_acceptance.py
ACCEPTANCE = []

VECTOR_8 = np.sqrt([0.03, 0.07, 0.15, 0.05, 0.1, 0.3, 0.2, 0.1])
VECTOR_4 = np.sqrt([0.6, 0.2, 0.1, 0.1])


def random_real(rng, N):
    x = rng.normal(size=N)
    return x / np.linalg.norm(x)


def random_complex(rng, N):
    z = rng.normal(size=N) + 1j * rng.normal(size=N)
    return z / np.linalg.norm(z)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def unitary(circuit, kernel="dense"):
    """Dense unitary of ``circuit``, one simulated basis state per column."""
    from qdcprep.statevector import simulate

    dim = 2**circuit.width
    cols = []
    for i in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[i] = 1
        cols.append(simulate(circuit, e, kernel=kernel).amplitudes)
    return np.array(cols).T


def equal_up_to_phase(a, b, atol):
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[k] / b[k]
    return abs(abs(phase) - 1) < atol and np.allclose(a, phase * b, atol=atol, rtol=0)


def random_circuit(rng, width, size):
    """``size`` random gates of every kind that fits on ``width`` qubits."""
    c = Circuit(width)
    for _ in range(size):
        kinds = ["RY", "RZ", "X", "H", "PCRY"] + ["CNOT", "SWAP"] * (width >= 2) + ["CSWAP"] * (width >= 3)
        kind = rng.choice(kinds)
        if kind in ("RY", "RZ"):
            c.append(Gate(kind, (int(rng.integers(width)),), float(rng.uniform(-7, 7))))
        elif kind in ("X", "H"):
            c.append(Gate(kind, (int(rng.integers(width)),)))
        elif kind == "PCRY":
            qs = rng.permutation(width)[:rng.integers(1, width + 1)]
            pattern = "".join(rng.choice(["0", "1"], size=len(qs) - 1))
            c.append(Gate(kind, tuple(int(q) for q in qs), float(rng.uniform(-7, 7)), pattern))
        else:
            arity = 3 if kind == "CSWAP" else 2
            c.append(Gate(kind, tuple(int(q) for q in rng.permutation(width)[:arity])))
    return c
