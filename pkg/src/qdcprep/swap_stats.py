"""Swap-test statistics over divide-and-conquer encoded registers.

Each input vector is loaded by the dc circuit with label qubits, so its
data register carries a diagonal reduced density matrix ``diag(|x_i|^2)``.
The swap test on two such registers therefore measures
``<sigma_z> = sum_i |x_i y_i|^2``; a controlled cyclic shift of four
registers measures ``sum_i px_i py_i |x_i|^2 |y_i|^2``.

Circuit layout is ``[swap ancilla | register 1 | register 2 | ...]``.
Registers start in a product state, so each preparation is simulated on
its own and the joint state is their Kronecker product; only the test
stage (H, CSWAPs, H) runs on the full register. ``full_circuit`` builds the
whole thing as one circuit for cross-checking on small sizes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .angles import check_vector
from .circuit import Circuit
from .dc import dc_prepare
from .errors import DimensionError, DistributionError, ResourceError
from .registers import PreparedRegister
from .statevector import MAX_QUBITS, StateVector, expect_z, sample, simulate

STAT_KINDS = ("overlap", "expectation", "second_moment", "variance", "covariance", "exy_cyclic")


@dataclass
class StatReport:
    statistic_kind: str
    exact_value: float
    sampled_value: float | None = None
    shots: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def sigma(self) -> float:
        """Binomial standard error of the sampled <sigma_z> estimate."""
        if not self.shots:
            raise ValueError("report has no shot count")
        z = self.extra.get("z_expectation", self.exact_value)
        p0 = min(max((1 + z) / 2, 0.0), 1.0)
        return 2 * math.sqrt(p0 * (1 - p0) / self.shots)


@dataclass
class SwapTestRun:
    """Evaluated swap-test circuit: ancilla ``<sigma_z>`` and its sample."""

    registers: list[PreparedRegister]
    stage: Circuit
    state: StateVector
    z: float
    p_plus: float
    p_minus: float
    sampled_z: float | None = None
    shots: int | None = None
    seed: int | None = None

    @property
    def offsets(self) -> list[int]:
        out, pos = [], 1
        for reg in self.registers:
            out.append(pos)
            pos += reg.width
        return out


def _register_data_wires(registers, offsets):
    return [[off + q for q in reg.data_qubits] for reg, off in zip(registers, offsets)]


def _test_stage(registers: list[PreparedRegister], cyclic: bool) -> Circuit:
    width = 1 + sum(r.width for r in registers)
    offsets, pos = [], 1
    for reg in registers:
        offsets.append(pos)
        pos += reg.width
    data = _register_data_wires(registers, offsets)
    stage = Circuit(width, metadata={"name": "swap-test-cyclic" if cyclic else "swap-test"})
    stage.h(0)
    # a right rotation by one register is a chain of adjacent register swaps
    for left_reg, right_reg in zip(data[:-1], data[1:]):
        for a, b in zip(left_reg, right_reg):
            stage.cswap(0, a, b)
    stage.h(0)
    return stage


def full_circuit(registers: list[PreparedRegister], cyclic: bool = False) -> Circuit:
    """Preparation of every register followed by the test stage, as one circuit."""
    stage = _test_stage(registers, cyclic)
    circ = Circuit(stage.width, metadata=dict(stage.metadata))
    pos = 1
    for reg in registers:
        circ.compose(reg.circuit, range(pos, pos + reg.width))
        pos += reg.width
    return circ.extend(stage.gates)


def run_swap_test(registers: list[PreparedRegister], shots: int | None = None,
                  seed: int | None = None, max_qubits: int = MAX_QUBITS) -> SwapTestRun:
    """Simulate the swap test over 2 registers (or the cyclic one over 4+)."""
    if len(registers) < 2:
        raise DimensionError("swap test needs at least two registers")
    ns = {r.n for r in registers}
    if len(ns) != 1:
        raise DimensionError(f"registers have different data sizes: {sorted(ns)}")
    width = 1 + sum(r.width for r in registers)
    if width > max_qubits:
        raise ResourceError(f"swap test needs {width} qubits, simulator cap is {max_qubits}")
    stage = _test_stage(registers, cyclic=len(registers) > 2)

    joint = np.array([1.0 + 0j, 0.0])
    for reg in registers:
        joint = np.kron(joint, simulate(reg.circuit, max_qubits=max_qubits).amplitudes)
    state = simulate(stage, joint, max_qubits=max_qubits)
    z = expect_z(state, 0)
    run = SwapTestRun(registers, stage, state, z, (1 + z) / 2, (1 - z) / 2)
    if shots is not None:
        seed = 0 if seed is None else int(seed)
        res = sample(state, [0], shots, seed)
        run.sampled_z = (res.counts.get("0", 0) - res.counts.get("1", 0)) / shots
        run.shots, run.seed = shots, seed
    return run


def _pair_registers(x, y, labels: bool):
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} vs {len(y)}")
    return [dc_prepare(x, labels=labels), dc_prepare(y, labels=labels)]


def swap_test_overlap(x, y, shots: int | None = None, seed: int | None = None,
                      labels: bool = True) -> StatReport:
    """Estimate ``sum_i |x_i y_i|^2`` from the ancilla's ``<sigma_z>``.

    ``labels=False`` skips the orthonormal labels; the measured value is then
    ``Tr(rho_x rho_y)`` with off-diagonal coherences and in general differs.
    """
    x, y = check_vector(x), check_vector(y)
    run = run_swap_test(_pair_registers(x, y, labels), shots, seed)
    return StatReport("overlap", run.z, run.sampled_z, run.shots, run.seed,
                      extra={"z_expectation": run.z, "p_plus": run.p_plus, "p_minus": run.p_minus,
                             "width": run.stage.width})


def moment_statistics(x, y, mode: str, ex_squared: float | None = None,
                      shots: int | None = None, seed: int | None = None) -> StatReport:
    """Reinterpret the swap-test overlap as a moment of a discrete variable.

    ``expectation``: outcomes ``|x_i|^2`` with probabilities ``|y_i|^2``.
    ``second_moment``: ``E(X^2)`` for outcomes ``x_i``, probabilities ``|y_i|^2``.
    ``variance``: ``E(X^2) - ex_squared``; the caller supplies ``E(X)^2``.
    ``covariance_uniform``: ``X, Y`` paired uniformly over ``i`` so that
    ``E(XY) = overlap / N`` and ``E(X) = E(Y) = 1/N``.
    """
    x, y = check_vector(x), check_vector(y)
    base = swap_test_overlap(x, y, shots, seed)
    N = len(x)

    def convert(v):
        if v is None:
            return None
        if mode in ("expectation", "second_moment"):
            return v
        if mode == "variance":
            return v - ex_squared
        return v / N - 1.0 / N**2

    if mode == "variance" and ex_squared is None:
        raise ValueError("variance mode needs ex_squared = E(X)^2")
    if mode not in ("expectation", "second_moment", "variance", "covariance_uniform"):
        raise ValueError(f"unknown mode {mode!r}")
    kind = "covariance" if mode == "covariance_uniform" else mode
    extra = dict(base.extra, overlap=base.exact_value, mode=mode)
    return StatReport(kind, convert(base.exact_value), convert(base.sampled_value),
                      base.shots, base.seed, extra)


def check_distribution(p, N: int) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (N,):
        raise DimensionError(f"distribution must have {N} entries, got shape {p.shape}")
    if np.any(p < 0):
        raise DistributionError("probabilities must be non-negative")
    if abs(p.sum() - 1.0) > 1e-8:
        raise DistributionError(f"probabilities sum to {p.sum()!r}, not 1")
    return p


def cyclic_exy(px, x, py, y, shots: int | None = None, seed: int | None = None) -> StatReport:
    """``sum_i px_i py_i |x_i|^2 |y_i|^2`` from a controlled cyclic shift of
    the four registers ``sqrt(px), x, sqrt(py), y``."""
    x, y = check_vector(x), check_vector(y)
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} vs {len(y)}")
    px, py = check_distribution(px, len(x)), check_distribution(py, len(x))
    regs = [dc_prepare(v, labels=True, normalize=True)
            for v in (np.sqrt(px), x, np.sqrt(py), y)]
    run = run_swap_test(regs, shots, seed)
    return StatReport("exy_cyclic", run.z, run.sampled_z, run.shots, run.seed,
                      extra={"z_expectation": run.z, "width": run.stage.width,
                             "cswaps": run.stage.count("CSWAP")})


@dataclass
class CovarianceResult:
    matrix: np.ndarray
    cost: dict


def covariance_matrix(X, Y, px, py) -> CovarianceResult:
    """Entry ``(a, b)`` is ``E(X_a Y_b) - E(X_a) E(Y_b)``.

    ``E(X_a Y_b)`` comes from :func:`cyclic_exy`; the single-variable
    expectations ``sum_i p_i |v_i|^2`` come from a swap test of ``v``
    against ``sqrt(p)``.
    """
    X = [check_vector(v) for v in X]
    Y = [check_vector(v) for v in Y]
    if not X or len(X) != len(Y):
        raise DimensionError("X and Y must hold the same number (>= 1) of vectors")
    N = len(X[0])
    if any(len(v) != N for v in X + Y):
        raise DimensionError("all vectors must have the same length")
    px, py = check_distribution(px, N), check_distribution(py, N)
    m = len(X)
    ex = [swap_test_overlap(v, np.sqrt(px)).exact_value for v in X]
    ey = [swap_test_overlap(v, np.sqrt(py)).exact_value for v in Y]
    cov = np.empty((m, m))
    for a in range(m):
        for b in range(m):
            cov[a, b] = cyclic_exy(px, X[a], py, Y[b]).exact_value - ex[a] * ey[b]
    cost = {"m": m, "N": N, "quantum_runs": m * m + 2 * m, "cyclic_runs": m * m,
            "classical_ops": N * m * m}
    return CovarianceResult(cov, cost)
