"""Gate-level circuit IR with layered depth, decomposition and serialization.

Qubit 0 is the top wire and the most significant bit of basis indices.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import ExportError, IRError

ROTATIONS = frozenset({"RY", "RZ"})
ARITY = {"RY": 1, "RZ": 1, "X": 1, "H": 1, "CNOT": 2, "SWAP": 2, "CSWAP": 3}
GATE_KINDS = frozenset(ARITY) | {"PCRY"}
CNOT_BASIS = frozenset({"RY", "RZ", "X", "H", "CNOT"})
QASM_NAMES = {"RY": "ry", "RZ": "rz", "X": "x", "H": "h", "CNOT": "cx", "SWAP": "swap", "CSWAP": "cswap"}


@dataclass(frozen=True)
class Gate:
    """One IR operation.

    For ``PCRY`` the qubits are ``controls + (target,)`` and ``pattern`` is a
    bitstring over the controls: ``'1'`` is a closed control, ``'0'`` open.
    ``CSWAP`` qubits are ``(control, a, b)``.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    pattern: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in GATE_KINDS:
            raise IRError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise IRError(f"duplicate qubit in {self.kind} gate: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise IRError(f"negative qubit index in {self.qubits}")
        if self.kind == "PCRY":
            if not self.qubits:
                raise IRError("PCRY needs a target qubit")
            if self.pattern is None or len(self.pattern) != len(self.qubits) - 1:
                raise IRError("PCRY pattern length must equal the number of controls")
            if set(self.pattern) - {"0", "1"}:
                raise IRError(f"PCRY pattern must be a bitstring, got {self.pattern!r}")
        else:
            if len(self.qubits) != ARITY[self.kind]:
                raise IRError(f"{self.kind} acts on {ARITY[self.kind]} qubits, got {len(self.qubits)}")
            if self.pattern is not None:
                raise IRError(f"{self.kind} takes no control pattern")
        if self.kind in ROTATIONS or self.kind == "PCRY":
            if self.angle is None or not math.isfinite(self.angle):
                raise IRError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise IRError(f"{self.kind} takes no angle")

    @property
    def controls(self) -> tuple[int, ...]:
        if self.kind == "PCRY":
            return self.qubits[:-1]
        if self.kind in ("CNOT", "CSWAP"):
            return self.qubits[:1]
        return ()

    @property
    def targets(self) -> tuple[int, ...]:
        return self.qubits[len(self.controls):]

    def shifted(self, mapping) -> "Gate":
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle, self.pattern)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "qubits": list(self.qubits)}
        if self.angle is not None:
            d["angle"] = self.angle
        if self.pattern is not None:
            d["pattern"] = self.pattern
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Gate":
        return cls(d["kind"], tuple(d["qubits"]), d.get("angle"), d.get("pattern"))


@dataclass
class Circuit:
    width: int
    gates: list[Gate] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.width < 0:
            raise IRError("circuit width must be non-negative")
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        bad = [q for q in gate.qubits if q >= self.width]
        if bad:
            raise IRError(f"qubit(s) {bad} out of range for width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    # convenience builders
    def ry(self, theta, q):
        return self.append(Gate("RY", (q,), theta))

    def rz(self, theta, q):
        return self.append(Gate("RZ", (q,), theta))

    def x(self, q):
        return self.append(Gate("X", (q,)))

    def h(self, q):
        return self.append(Gate("H", (q,)))

    def cnot(self, c, t):
        return self.append(Gate("CNOT", (c, t)))

    def swap(self, a, b):
        return self.append(Gate("SWAP", (a, b)))

    def cswap(self, c, a, b):
        return self.append(Gate("CSWAP", (c, a, b)))

    def pcry(self, theta, controls: Sequence[int], target: int, pattern: str | None = None):
        if pattern is None:
            pattern = "1" * len(controls)
        return self.append(Gate("PCRY", (*controls, target), theta, pattern))

    def compose(self, other: "Circuit", qubits: Sequence[int] | None = None) -> "Circuit":
        """Append ``other``'s gates, relabelling its qubit ``i`` to ``qubits[i]``."""
        mapping = list(range(other.width)) if qubits is None else list(qubits)
        if len(mapping) != other.width:
            raise IRError("qubit map must cover the composed circuit's width")
        return self.extend(g.shifted(mapping) for g in other.gates)

    def copy(self) -> "Circuit":
        return Circuit(self.width, list(self.gates), json.loads(json.dumps(self.metadata)))

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.width, self.gates, self.metadata) == (other.width, other.gates, other.metadata)


# -- depth -------------------------------------------------------------------

@dataclass(frozen=True)
class DepthReport:
    depth: int
    width: int
    gate_counts: dict
    basis: str

    def to_dict(self) -> dict:
        return {"depth": self.depth, "width": self.width,
                "gate_counts": dict(self.gate_counts), "basis": self.basis}


def layer_depth(gates: Iterable[Gate], width: int) -> int:
    """Greedy ASAP layering: each gate sits one layer above the latest gate
    sharing any of its qubits."""
    front = [0] * width
    depth = 0
    for g in gates:
        layer = 1 + max(front[q] for q in g.qubits)
        for q in g.qubits:
            front[q] = layer
        depth = max(depth, layer)
    return depth


def depth(circuit: Circuit, basis: Literal["abstract", "cnot"] = "abstract") -> DepthReport:
    if basis == "cnot":
        circuit = decompose(circuit)
    elif basis != "abstract":
        raise ValueError(f"unknown basis {basis!r}")
    counts = dict(sorted(Counter(g.kind for g in circuit.gates).items()))
    return DepthReport(layer_depth(circuit.gates, circuit.width), circuit.width, counts, basis)


# -- decomposition -----------------------------------------------------------

def _toffoli(a: int, b: int, t: int) -> list[Gate]:
    # T = RZ(pi/4) and Tdg = RZ(-pi/4) up to global phase.
    T, Td = math.pi / 4, -math.pi / 4
    return [
        Gate("H", (t,)),
        Gate("CNOT", (b, t)), Gate("RZ", (t,), Td),
        Gate("CNOT", (a, t)), Gate("RZ", (t,), T),
        Gate("CNOT", (b, t)), Gate("RZ", (t,), Td),
        Gate("CNOT", (a, t)), Gate("RZ", (b,), T), Gate("RZ", (t,), T),
        Gate("H", (t,)),
        Gate("CNOT", (a, b)), Gate("RZ", (a,), T), Gate("RZ", (b,), Td),
        Gate("CNOT", (a, b)),
    ]


def _multiplexed_ry(controls: Sequence[int], target: int, angles: Sequence[float]) -> list[Gate]:
    """RY on ``target`` with angle ``angles[c]`` selected by the control value
    ``c`` (first control is the most significant bit)."""
    if not controls:
        return [Gate("RY", (target,), angles[0])]
    half = len(angles) // 2
    lo, hi = angles[:half], angles[half:]
    plus = [(a + b) / 2 for a, b in zip(lo, hi)]
    minus = [(a - b) / 2 for a, b in zip(lo, hi)]
    rest = controls[1:]
    return (_multiplexed_ry(rest, target, plus)
            + [Gate("CNOT", (controls[0], target))]
            + _multiplexed_ry(rest, target, minus)
            + [Gate("CNOT", (controls[0], target))])


def _decompose_gate(g: Gate) -> list[Gate]:
    if g.kind in CNOT_BASIS:
        return [g]
    if g.kind == "SWAP":
        a, b = g.qubits
        return [Gate("CNOT", (a, b)), Gate("CNOT", (b, a)), Gate("CNOT", (a, b))]
    if g.kind == "CSWAP":
        c, a, b = g.qubits
        return [Gate("CNOT", (b, a)), *_toffoli(c, a, b), Gate("CNOT", (b, a))]
    # PCRY
    controls, target = g.qubits[:-1], g.qubits[-1]
    flips = [Gate("X", (q,)) for q, bit in zip(controls, g.pattern) if bit == "0"]
    angles = [0.0] * (2 ** len(controls))
    angles[-1] = g.angle
    return flips + _multiplexed_ry(controls, target, angles) + flips


def decompose(circuit: Circuit) -> Circuit:
    """Rewrite over {RY, RZ, X, H, CNOT}; equal to the input up to global phase."""
    out = Circuit(circuit.width, metadata=dict(circuit.metadata))
    for g in circuit.gates:
        out.extend(_decompose_gate(g))
    return out


# -- serialization -----------------------------------------------------------

def to_json(circuit: Circuit) -> str:
    doc = {
        "width": circuit.width,
        "gates": [g.to_dict() for g in circuit.gates],
        "metadata": circuit.metadata,
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> Circuit:
    try:
        doc = json.loads(text)
        gates = [Gate.from_dict(d) for d in doc["gates"]]
        return Circuit(int(doc["width"]), gates, dict(doc.get("metadata", {})))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise IRError(f"malformed circuit JSON: {exc}") from exc


def to_qasm(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    roles = circuit.metadata.get("roles")
    if roles:
        for name in ("data", "ancilla", "label"):
            if roles.get(name):
                lines.append(f"// {name}: {' '.join(map(str, roles[name]))}")
    lines.append(f"qreg q[{circuit.width}];")
    for g in circuit.gates:
        name = QASM_NAMES.get(g.kind)
        if name is None:
            raise ExportError(f"{g.kind} has no QASM form; decompose the circuit first")
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.angle is not None:
            lines.append(f"{name}({g.angle!r}) {args};")
        else:
            lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"


def export(circuit: Circuit, fmt: Literal["qasm", "json"] = "json") -> str:
    if fmt == "json":
        return to_json(circuit)
    if fmt == "qasm":
        return to_qasm(circuit)
    raise ExportError(f"unknown export format {fmt!r}")
