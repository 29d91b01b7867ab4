"""Sequential O(N)-depth loader built from pattern-controlled RY rotations."""

from __future__ import annotations

from .angles import AngleTree, gen_angles, level
from .circuit import Circuit
from .errors import DimensionError, InputError
from .registers import PreparedRegister


def mottonen_circuit(angles: AngleTree) -> PreparedRegister:
    """Top-down loader on ``n = log2(N)`` qubits.

    Node ``k`` becomes an RY on qubit ``level(k)``, controlled by qubits
    ``0..level(k)-1`` matching the binary form of ``k - (2**level(k) - 1)``.
    The root rotation is a plain RY.
    """
    if not isinstance(angles, AngleTree) or angles.kind != "ry":
        raise DimensionError("mottonen_circuit expects an RY angle tree")
    try:
        angles.validate()
    except InputError as exc:
        raise DimensionError(f"malformed angle tree: {exc}") from exc
    n = angles.n
    circ = Circuit(n, metadata={"name": f"mottonen-{angles.size}", "synthesizer": "mottonen"})
    for k, theta in enumerate(angles):
        lvl = level(k)
        if lvl == 0:
            circ.ry(theta, 0)
            continue
        pattern = format(k - (2**lvl - 1), f"0{lvl}b")
        circ.pcry(theta, range(lvl), lvl, pattern)
    return PreparedRegister(circ, data_qubits=list(range(n)), ancilla_qubits=[], n=n)


def mottonen_prepare(x) -> PreparedRegister:
    """Loader for a real vector; validation is left to the caller."""
    return mottonen_circuit(gen_angles(x))
