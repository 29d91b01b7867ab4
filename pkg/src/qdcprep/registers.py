from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import Circuit
from .errors import IRError


@dataclass
class PreparedRegister:
    """A synthesized circuit plus the role of each qubit.

    ``data_qubits`` are listed most significant bit first.
    """

    circuit: Circuit
    data_qubits: list[int]
    ancilla_qubits: list[int]
    label_qubits: list[int] = field(default_factory=list)
    n: int = 0

    def __post_init__(self):
        roles = [*self.data_qubits, *self.ancilla_qubits, *self.label_qubits]
        if sorted(roles) != list(range(self.circuit.width)):
            raise IRError("data, ancilla and label qubits must partition the circuit width")
        if not self.n:
            self.n = len(self.data_qubits)
        self.circuit.metadata["roles"] = self.roles()

    @property
    def width(self) -> int:
        return self.circuit.width

    def roles(self) -> dict:
        return {"data": list(self.data_qubits), "ancilla": list(self.ancilla_qubits),
                "label": list(self.label_qubits)}
