import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import equal_up_to_phase, unitary
from qdcprep.circuit import (CNOT_BASIS, Circuit, Gate, decompose, depth, export,
                             from_json, layer_depth, to_json)
from qdcprep.errors import ExportError, IRError


def test_append_examples():
    c = Circuit(2).cnot(0, 1)
    assert len(c) == 1 and depth(c).depth == 1
    c = Circuit(3).cnot(0, 1).ry(0.3, 2)
    assert depth(c).depth == 1
    c = Circuit(3).cnot(0, 1).cnot(1, 2)
    assert depth(c).depth == 2


def test_single_gate_depth():
    assert depth(Circuit(1).h(0)).depth == 1
    assert depth(Circuit(4)).depth == 0


@pytest.mark.parametrize("make", [
    lambda c: c.cnot(0, 2),
    lambda c: c.cnot(1, 1),
    lambda c: c.cswap(0, 1, 1),
    lambda c: c.append(Gate("RY", (5,), 0.1)),
])
def test_append_rejects_bad_gates(make):
    with pytest.raises(IRError):
        make(Circuit(2))


@pytest.mark.parametrize("kwargs", [
    dict(kind="PCRY", qubits=(0, 1), angle=0.2, pattern="01"),
    dict(kind="PCRY", qubits=(0, 1), angle=0.2, pattern="2"),
    dict(kind="RY", qubits=(0,), angle=float("nan")),
    dict(kind="RY", qubits=(0,)),
    dict(kind="X", qubits=(0,), angle=1.0),
    dict(kind="CNOT", qubits=(0,)),
    dict(kind="U3", qubits=(0,)),
])
def test_gate_validation(kwargs):
    with pytest.raises(IRError):
        Gate(**kwargs)


def test_depth_report_counts():
    c = Circuit(3).ry(0.1, 0).ry(0.2, 1).cswap(0, 1, 2)
    rep = depth(c)
    assert rep.gate_counts == {"CSWAP": 1, "RY": 2}
    assert rep.width == 3 and rep.basis == "abstract"
    assert rep.depth <= sum(rep.gate_counts.values())


def test_cnot_basis_depth_uses_decomposition():
    c = Circuit(3).cswap(0, 1, 2)
    rep = depth(c, "cnot")
    assert rep.gate_counts["CNOT"] == 8
    assert set(rep.gate_counts) <= CNOT_BASIS
    assert rep.depth > depth(c).depth


# -- decomposition -----------------------------------------------------------

def test_cswap_decomposition_on_basis_states():
    c = Circuit(3).cswap(0, 1, 2)
    d = decompose(c)
    assert d.count("CNOT") == 8
    assert all(g.kind in CNOT_BASIS for g in d)
    assert equal_up_to_phase(unitary(d), unitary(c), 1e-10)
    # literal action: swap the targets exactly when the control is 1
    expected = np.zeros((8, 8))
    for i in range(8):
        c_, a, b = (i >> 2) & 1, (i >> 1) & 1, i & 1
        j = (c_ << 2) | ((b << 1) | a if c_ else (a << 1) | b)
        expected[j, i] = 1
    assert equal_up_to_phase(unitary(d), expected, 1e-10)


def test_x_is_a_fixed_point():
    c = Circuit(1).x(0)
    assert decompose(c).gates == c.gates


def test_singly_controlled_ry():
    theta = 0.83
    c = Circuit(2).pcry(theta, [0], 1, "1")
    d = decompose(c)
    assert [g.kind for g in d] == ["RY", "CNOT", "RY", "CNOT"]
    cs, sn = math.cos(theta / 2), math.sin(theta / 2)
    expected = np.eye(4)
    expected[2:, 2:] = [[cs, -sn], [sn, cs]]
    np.testing.assert_allclose(unitary(d), expected, atol=1e-12)
    np.testing.assert_allclose(unitary(c), expected, atol=1e-12)


@pytest.mark.parametrize("pattern", ["0", "1", "00", "01", "10", "11", "010", "1101"])
def test_pattern_controlled_ry(pattern):
    m = len(pattern)
    c = Circuit(m + 1).pcry(1.234, range(m), m, pattern)
    assert equal_up_to_phase(unitary(decompose(c)), unitary(c), 1e-10)


def random_circuit(data, width, size):
    c = Circuit(width)
    qubit = st.integers(0, width - 1)
    angle = st.floats(-7, 7, allow_nan=False)
    for _ in range(size):
        kind = data.draw(st.sampled_from(["RY", "RZ", "X", "H", "CNOT", "SWAP", "CSWAP", "PCRY"]))
        if kind in ("RY", "RZ"):
            c.append(Gate(kind, (data.draw(qubit),), data.draw(angle)))
        elif kind in ("X", "H"):
            c.append(Gate(kind, (data.draw(qubit),)))
        else:
            arity = {"CNOT": 2, "SWAP": 2, "CSWAP": 3}.get(kind)
            if arity is None:
                arity = data.draw(st.integers(1, width))
            qs = data.draw(st.permutations(range(width)))[:arity]
            if kind == "PCRY":
                pattern = "".join(data.draw(st.sampled_from("01")) for _ in qs[:-1])
                c.append(Gate(kind, tuple(qs), data.draw(angle), pattern))
            else:
                c.append(Gate(kind, tuple(qs)))
    return c


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(3, 6), st.integers(1, 12))
def test_decomposition_soundness(data, width, size):
    c = random_circuit(data, width, size)
    d = decompose(c)
    assert all(g.kind in CNOT_BASIS for g in d)
    assert equal_up_to_phase(unitary(d), unitary(c), 1e-10)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(3, 8), st.integers(0, 25))
def test_depth_monotone_and_deterministic(data, width, size):
    c = random_circuit(data, width, size)
    for k in range(len(c.gates)):
        before = layer_depth(c.gates[:k], width)
        after = layer_depth(c.gates[:k + 1], width)
        assert before <= after <= before + 1
    assert depth(c) == depth(c)


# -- serialization -----------------------------------------------------------

def test_qasm_examples():
    text = export(Circuit(1).ry(0.5, 0), "qasm")
    assert text.startswith("OPENQASM 2.0;")
    assert "qreg q[1];" in text
    assert "ry(0.5) q[0];" in text
    assert "cswap q[0],q[1],q[2];" in export(Circuit(3).cswap(0, 1, 2), "qasm")
    assert "cx q[1],q[0];" in export(Circuit(2).cnot(1, 0), "qasm")


def test_qasm_rejects_pattern_controls():
    c = Circuit(2).pcry(0.1, [0], 1, "0")
    with pytest.raises(ExportError):
        export(c, "qasm")
    assert "PCRY" not in export(decompose(c), "qasm")


def test_unknown_format():
    with pytest.raises(ExportError):
        export(Circuit(1), "quil")


def test_json_schema():
    c = Circuit(2, metadata={"name": "t"}).ry(0.25, 0).pcry(0.5, [0], 1, "0")
    doc = json.loads(to_json(c))
    assert doc["width"] == 2
    assert doc["gates"][0] == {"kind": "RY", "qubits": [0], "angle": 0.25}
    assert doc["gates"][1]["pattern"] == "0"
    assert doc["metadata"] == {"name": "t"}


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(3, 8), st.integers(0, 30))
def test_json_round_trip(data, width, size):
    c = random_circuit(data, width, size)
    c.metadata = {"name": "random", "roles": {"data": [0], "ancilla": [], "label": []}}
    assert from_json(to_json(c)) == c


def test_from_json_malformed():
    with pytest.raises(IRError):
        from_json('{"gates": []}')
    with pytest.raises(IRError):
        from_json('{"width": 1, "gates": [{"kind": "CNOT", "qubits": [0, 1]}]}')


def test_compose_relabels():
    inner = Circuit(2).cnot(0, 1)
    outer = Circuit(4).compose(inner, [3, 1])
    assert outer.gates == [Gate("CNOT", (3, 1))]
