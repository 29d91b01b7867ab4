"""Bottom-up divide-and-conquer loader with CSWAP combining.

Every node of the angle tree gets its own qubit. Leaves are loaded in
parallel, then each internal node swaps the left-spine wires of its two
subtrees under its own control. The data ends up on the left spine
``{0, 1, 3, 7, ...}``, entangled with the remaining (ancilla) wires::

    sum_k x_k |k>_data |psi_k>_ancilla
"""

from __future__ import annotations

import numpy as np

from .angles import (AngleTree, check_vector, gen_angles, gen_angles_z,
                     heap_to_level_index, left, num_qubits, parent, right,
                     tree_params)
from .circuit import Circuit
from .errors import DimensionError, InputError, IRError
from .registers import PreparedRegister
from .statevector import StateVector
from .topdown import mottonen_circuit


def left_spine(size: int) -> list[int]:
    """Heap indices ``2**l - 1`` for ``l = 0..n-1``; the data register."""
    return [2**lvl - 1 for lvl in range(num_qubits(size))]


def dc_circuit(angles_y: AngleTree, angles_z: AngleTree | None = None) -> PreparedRegister:
    """Divide-and-conquer circuit on ``N - 1`` qubits.

    Qubit ``k`` carries node ``k`` of the angle tree: an RY (then an RZ when
    phases are given), followed by the CSWAP walk from ``parent(N-2)`` down
    to the root.
    """
    if angles_y.kind != "ry":
        raise DimensionError("first tree must be an RY tree")
    angles_y.validate()
    N = angles_y.size
    if angles_z is not None:
        if angles_z.kind != "rz" or angles_z.size != N:
            raise DimensionError(f"RZ tree must have {N - 1} angles, got {len(angles_z)}")
        angles_z.validate()

    circ = Circuit(N - 1, metadata={"name": f"dc-{N}", "synthesizer": "dc"})
    for k, theta in enumerate(angles_y):
        circ.ry(theta, k)
    if angles_z is not None:
        for k, lam in enumerate(angles_z):
            circ.rz(lam, k)

    actual = parent(N - 2) if N > 2 else -1
    while actual >= 0:
        left_index, right_index = left(actual), right(actual)
        while right_index < N - 1:
            circ.cswap(actual, left_index, right_index)
            left_index, right_index = left(left_index), left(right_index)
        actual -= 1

    data = left_spine(N)
    ancilla = [q for q in range(N - 1) if q not in set(data)]
    return PreparedRegister(circ, data, ancilla, n=len(data))


def dc_prepare(x, labels: bool = False, normalize: bool = False) -> PreparedRegister:
    """Validate ``x`` and build its dc circuit.

    Real input gives an RY-only circuit (signs are carried by the leaf
    angles); complex input adds the RZ phase layer.
    """
    x = check_vector(x, normalize)
    if np.iscomplexobj(x):
        reg = dc_circuit(gen_angles(np.abs(x)), gen_angles_z(np.angle(x)))
    else:
        reg = dc_circuit(gen_angles(x))
    return add_orthonormal_labels(reg) if labels else reg


def add_orthonormal_labels(reg: PreparedRegister) -> PreparedRegister:
    """Append ``n`` label qubits, each a CNOT copy of one data qubit.

    This makes the ancilla states attached to different basis indices
    orthogonal.
    """
    if reg.label_qubits:
        raise IRError("register already carries label qubits")
    w = reg.circuit.width
    circ = Circuit(w + reg.n, list(reg.circuit.gates), dict(reg.circuit.metadata))
    circ.metadata["labels"] = True
    labels = list(range(w, w + reg.n))
    for d, lab in zip(reg.data_qubits, labels):
        circ.cnot(d, lab)
    return PreparedRegister(circ, list(reg.data_qubits), list(reg.ancilla_qubits), labels, reg.n)


# -- hybrid block-size-k loader ----------------------------------------------

class _BlockTree:
    # Heap positions 0..M-2 are single-qubit internal nodes (wire = position);
    # positions M-1..2M-2 are the M leaf blocks of b wires each.

    def __init__(self, num_blocks: int, block_qubits: int):
        self.M, self.b = num_blocks, block_qubits

    def wires(self, p: int) -> list[int]:
        if p < self.M - 1:
            return [p]
        i = p - (self.M - 1)
        start = self.M - 1 + i * self.b
        return list(range(start, start + self.b))

    def spine(self, p: int) -> list[int]:
        out = []
        while p < self.M - 1:
            out.append(p)
            p = left(p)
        return out + self.wires(p)

    @property
    def width(self) -> int:
        return (self.M - 1) + self.M * self.b


def hybrid_circuit(x, block: int, normalize: bool = False) -> PreparedRegister:
    """Load ``N/block`` blocks sequentially, then combine them by CSWAP tree.

    Each combine swaps whole block registers wire by wire under one control.
    ``block = 2`` reproduces :func:`dc_circuit` gate for gate. Real input only.
    """
    x = check_vector(x, normalize)
    if np.iscomplexobj(x):
        raise InputError("hybrid_circuit loads real vectors only")
    N = x.size
    if block < 2 or block & (block - 1):
        raise DimensionError(f"block size must be a power of two >= 2, got {block}")
    if block >= N or N % block:
        raise DimensionError(f"block size {block} must divide N={N} and be smaller than it")
    b = num_qubits(block)
    M = N // block
    tree = _BlockTree(M, b)
    blocks = x.reshape(M, block)

    circ = Circuit(tree.width, metadata={"name": f"hybrid-{N}-k{block}", "synthesizer": f"hybrid:{block}"})
    for k, theta in enumerate(gen_angles(np.linalg.norm(blocks, axis=1))):
        circ.ry(theta, k)
    for i in range(M):
        sub = mottonen_circuit(gen_angles(blocks[i]))
        circ.compose(sub.circuit, tree.wires(M - 1 + i))
    for actual in range(M - 2, -1, -1):
        for a, c in zip(tree.spine(left(actual)), tree.spine(right(actual))):
            circ.cswap(actual, a, c)

    data = tree.spine(0)
    ancilla = [q for q in range(tree.width) if q not in set(data)]
    return PreparedRegister(circ, data, ancilla, n=len(data))


# -- classical oracle --------------------------------------------------------

def _node_amplitudes(x: np.ndarray, p: int, n: int, complex_mode: bool) -> np.ndarray:
    j, v = heap_to_level_index(p, n)
    tp = tree_params(x, j, v)
    a, b = np.sqrt(max(0.0, 1.0 - tp.beta**2)), tp.beta
    if complex_mode:
        return np.array([np.exp(-0.5j * tp.lam) * a, np.exp(0.5j * tp.lam) * b])
    return np.array([a, b], dtype=np.complex128)


def expected_entangled_state(x, block: int = 2, labels: bool = False,
                             normalize: bool = False) -> StateVector:
    """The full state the dc (or hybrid) circuit must produce, built without gates.

    Node states come from the closed-form ``beta``/``lambda`` parameters;
    each combine forms ``a|0>|psi>|phi> + b|1>|phi'>|psi'>`` where the primes
    mark the exchange of the two subtrees' spine wires. With ``labels`` the
    data bits are copied onto ``n`` appended label qubits.
    """
    x = check_vector(x, normalize)
    N = x.size
    n = num_qubits(N)
    complex_mode = bool(np.iscomplexobj(x))
    if complex_mode and block != 2:
        raise InputError("complex vectors are only supported with block size 2")
    if block < 2 or block & (block - 1) or block > N:
        raise DimensionError(f"invalid block size {block} for N={N}")
    b = num_qubits(block)
    M = N // block
    tree = _BlockTree(M, b)

    def build(p):
        if p >= M - 1:
            i = p - (M - 1)
            if block == 2:
                if complex_mode:
                    amps = _node_amplitudes(x, p, n, True)
                else:
                    seg = x[2 * i:2 * i + 2]
                    nrm = np.linalg.norm(seg)
                    amps = seg / nrm if nrm else np.array([1.0, 0.0])
            else:
                seg = x[i * block:(i + 1) * block]
                nrm = np.linalg.norm(seg)
                amps = seg / nrm if nrm else np.eye(block)[0]
            wires = tree.wires(p)
            return np.asarray(amps, dtype=np.complex128).reshape((2,) * b), wires, list(wires)

        amp0, amp1 = _node_amplitudes(x, p, n, complex_mode)
        tl, wl, sl = build(left(p))
        tr, wr, sr = build(right(p))
        t0 = np.multiply.outer(tl, tr)
        wires = wl + wr
        perm = list(range(len(wires)))
        for a, c in zip(sl, sr):
            ia, ic = wires.index(a), wires.index(c)
            perm[ia], perm[ic] = ic, ia
        t1 = t0.transpose(perm)
        return np.stack([amp0 * t0, amp1 * t1]), [p] + wires, [p] + sl

    tensor, wires, spine = build(0)
    amps = np.transpose(tensor, np.argsort(wires)).reshape(-1)
    width = tree.width
    if labels:
        amps = _copy_to_labels(amps, width, spine)
        width += len(spine)
    return StateVector(amps, width)


def _copy_to_labels(amps: np.ndarray, width: int, data: list[int]) -> np.ndarray:
    n = len(data)
    idx = np.arange(amps.size, dtype=np.int64)
    value = np.zeros_like(idx)
    for q in data:
        value = (value << 1) | ((idx >> (width - 1 - q)) & 1)
    out = np.zeros(amps.size << n, dtype=np.complex128)
    out[(idx << n) | value] = amps
    return out


def ancilla_gram(state: StateVector, data_qubits) -> np.ndarray:
    """Gram matrix of the (unnormalized) states attached to each data index.

    Entry ``[k, l]`` is ``<phi_l|phi_k>`` where the full state is
    ``sum_k |k>|phi_k>``; orthonormal ancillas make it ``diag(|x_k|^2)``.
    """
    data = list(data_qubits)
    rest = [q for q in range(state.num_qubits) if q not in set(data)]
    t = state.amplitudes.reshape((2,) * state.num_qubits).transpose(data + rest)
    m = t.reshape(2 ** len(data), -1)
    return m @ m.conj().T
