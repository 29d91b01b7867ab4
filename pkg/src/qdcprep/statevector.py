"""Exact dense statevector simulation.

Two kernels apply the same gate semantics through unrelated indexing:

* ``"dense"`` views the amplitudes as a rank-Q tensor and selects control
  values and targets with per-axis slicing;
* ``"amplitude-map"`` computes, with integer bit arithmetic over basis
  indices, which amplitudes each gate pairs up. It can split that index set
  across worker threads.

Every gate update is elementwise over disjoint amplitude pairs, so
partitioning never changes the result bit for bit.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate
from .errors import IRError, ResourceError

MAX_QUBITS = 24
NORM_TOL = 1e-12

_SQRT_HALF = 1 / math.sqrt(2)


def gate_matrix(g: Gate) -> np.ndarray | None:
    """2x2 matrix applied to the target, or None for the swap gates."""
    if g.kind in ("RY", "PCRY"):
        c, s = math.cos(g.angle / 2), math.sin(g.angle / 2)
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if g.kind == "RZ":
        e = np.exp(-0.5j * g.angle)
        return np.array([[e, 0], [0, e.conjugate()]], dtype=np.complex128)
    if g.kind in ("X", "CNOT"):
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if g.kind == "H":
        return np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT_HALF
    return None


def _control_values(g: Gate) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if g.kind == "PCRY":
        return g.qubits[:-1], tuple(int(b) for b in g.pattern)
    if g.kind in ("CNOT", "CSWAP"):
        return g.qubits[:1], (1,)
    return (), ()


def _pair_update(a0, a1, m):
    return m[0, 0] * a0 + m[0, 1] * a1, m[1, 0] * a0 + m[1, 1] * a1


# -- dense (tensor-axis) kernel ----------------------------------------------

def _tensor_view(psi: np.ndarray, width: int, touched) -> tuple[np.ndarray, dict]:
    """Reshape so each touched qubit is its own size-2 axis and every run of
    untouched qubits is merged into one axis. Returns the view and the axis
    of each touched qubit."""
    shape, axis, run = [], {}, 0
    for q in range(width):
        if q in touched:
            if run:
                shape.append(2**run)
                run = 0
            axis[q] = len(shape)
            shape.append(2)
        else:
            run += 1
    if run:
        shape.append(2**run)
    return psi.reshape(shape), axis


def _scratch(work: np.ndarray, like: np.ndarray) -> np.ndarray:
    return work[:like.size].reshape(like.shape)


def _apply_dense(psi: np.ndarray, g: Gate, width: int, work=None) -> None:
    """In-place update. ``work`` is an optional pair of flat scratch arrays of
    ``psi.size // 2`` entries, reused across gates to avoid fresh allocations."""
    t, axis = _tensor_view(psi, width, set(g.qubits))
    controls, values = _control_values(g)
    sel = [slice(None)] * t.ndim
    for q, v in zip(controls, values):
        sel[axis[q]] = v
    m = gate_matrix(g)
    if m is None:
        a, b = g.targets
        i01, i10 = list(sel), list(sel)
        i01[axis[a]], i01[axis[b]] = 0, 1
        i10[axis[a]], i10[axis[b]] = 1, 0
        v01, v10 = t[(*i01, ...)], t[(*i10, ...)]
        tmp = v01.copy() if work is None else _scratch(work[0], v01)
        if work is not None:
            np.copyto(tmp, v01)
        v01[...] = v10
        v10[...] = tmp
        return
    (q,) = g.targets
    s0, s1 = list(sel), list(sel)
    s0[axis[q]], s1[axis[q]] = 0, 1
    a0, a1 = t[(*s0, ...)], t[(*s1, ...)]
    if work is None:
        a0[...], a1[...] = _pair_update(a0, a1, m)
        return
    if m[0, 1] == 0 and m[1, 0] == 0:
        a0 *= m[0, 0]
        a1 *= m[1, 1]
        return
    old0, prod = _scratch(work[0], a0), _scratch(work[1], a0)
    # same products and sums as _pair_update, evaluated without temporaries
    np.copyto(old0, a0)
    np.multiply(a0, m[0, 0], out=a0)
    np.multiply(a1, m[0, 1], out=prod)
    a0 += prod
    np.multiply(a1, m[1, 1], out=a1)
    np.multiply(old0, m[1, 0], out=prod)
    a1 += prod


# -- amplitude-map (bit arithmetic) kernel -----------------------------------

def _bit(q: int, width: int) -> int:
    return 1 << (width - 1 - q)


def _apply_map(psi: np.ndarray, g: Gate, width: int, threads: int = 1) -> None:
    idx = np.arange(psi.size, dtype=np.int64)
    keep = np.ones(psi.size, dtype=bool)
    controls, values = _control_values(g)
    for q, v in zip(controls, values):
        keep &= ((idx & _bit(q, width)) != 0) == bool(v)
    m = gate_matrix(g)
    if m is None:
        a, b = (_bit(q, width) for q in g.targets)
        keep &= (idx & a) != 0
        keep &= (idx & b) == 0
        lo = idx[keep]
        hi = lo ^ (a | b)
    else:
        tb = _bit(g.targets[0], width)
        keep &= (idx & tb) == 0
        lo = idx[keep]
        hi = lo | tb

    def work(chunk):
        i0, i1 = lo[chunk], hi[chunk]
        a0, a1 = psi[i0], psi[i1]
        if m is None:
            psi[i0], psi[i1] = a1, a0
        else:
            psi[i0], psi[i1] = _pair_update(a0, a1, m)

    if threads <= 1 or lo.size < 2 * threads:
        work(slice(None))
        return
    bounds = np.linspace(0, lo.size, threads + 1).astype(int)
    with ThreadPoolExecutor(threads) as pool:
        list(pool.map(work, [slice(s, e) for s, e in zip(bounds[:-1], bounds[1:])]))


KERNELS = ("dense", "amplitude-map")


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("QDCPREP_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class StateVector:
    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (2 ** self.num_qubits,):
            raise IRError(f"expected {2 ** self.num_qubits} amplitudes, got {self.amplitudes.shape}")

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(2 ** num_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps, num_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        """|<self|other>|, insensitive to global phase."""
        return abs(self.inner(other))

    def __len__(self) -> int:
        return self.amplitudes.size


def simulate(circuit: Circuit, initial_state=None, *, kernel: str = "dense",
             threads: int | None = None, max_qubits: int = MAX_QUBITS,
             check_norm: bool = False) -> StateVector:
    """Run ``circuit`` from ``|0...0>`` (or ``initial_state``) exactly.

    With ``check_norm`` the state norm is asserted after every gate.
    """
    width = circuit.width
    if width > max_qubits:
        raise ResourceError(f"circuit needs {width} qubits, simulator cap is {max_qubits}")
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}")
    if initial_state is None:
        psi = StateVector.zero(width).amplitudes
    else:
        amps = initial_state.amplitudes if isinstance(initial_state, StateVector) else initial_state
        psi = np.array(amps, dtype=np.complex128)
        if psi.shape != (2 ** width,):
            raise IRError(f"initial state has shape {psi.shape}, expected ({2 ** width},)")
    threads = default_threads() if threads is None else threads
    work = None
    if kernel == "dense" and circuit.gates:
        work = (np.empty(psi.size // 2, dtype=np.complex128), np.empty(psi.size // 2, dtype=np.complex128))
    for g in circuit.gates:
        if kernel == "dense":
            _apply_dense(psi, g, width, work)
        else:
            _apply_map(psi, g, width, threads)
        if check_norm:
            err = abs(np.linalg.norm(psi) - 1.0)
            if err > NORM_TOL:
                raise AssertionError(f"norm drifted by {err:.3e} after {g}")
    return StateVector(psi, width)


def _check_subset(qubits, width: int) -> list[int]:
    qubits = [int(q) for q in qubits]
    if len(set(qubits)) != len(qubits):
        raise IRError(f"duplicate qubit in {qubits}")
    if any(not 0 <= q < width for q in qubits):
        raise IRError(f"qubit out of range in {qubits} for width {width}")
    return qubits


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def marginal(state: StateVector, qubits) -> np.ndarray:
    """Outcome probabilities of ``qubits``; the first listed qubit is the MSB."""
    qubits = _check_subset(qubits, state.num_qubits)
    p = probabilities(state).reshape((2,) * state.num_qubits)
    rest = tuple(q for q in range(state.num_qubits) if q not in qubits)
    if rest:
        p = p.sum(axis=rest)
    kept = sorted(qubits)
    p = np.transpose(p, [kept.index(q) for q in qubits])
    return p.reshape(-1)


def expect_z(state: StateVector, qubit: int) -> float:
    p = marginal(state, [qubit])
    return float(p[0] - p[1])


@dataclass(frozen=True)
class ShotResult:
    counts: dict
    shots: int
    seed: int

    def to_json(self) -> str:
        return json.dumps({"counts": self.counts, "shots": self.shots, "seed": self.seed},
                          sort_keys=True)

    def frequencies(self, width: int) -> np.ndarray:
        f = np.zeros(2 ** width)
        for bits, c in self.counts.items():
            f[int(bits, 2)] = c / self.shots
        return f


def sample(state: StateVector, qubits, shots: int, seed: int) -> ShotResult:
    """Seeded i.i.d. measurement of ``qubits``; bitstrings are MSB-first."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = marginal(state, qubits)
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, p)
    k = len(qubits)
    counts = {format(i, f"0{k}b"): int(c) for i, c in enumerate(draws) if c}
    return ShotResult(counts, int(shots), int(seed))
