"""Experiment configs and runners used by the scripts in ``scripts/``.

Each runner takes a dataclass config and returns plain rows (lists of dicts)
or a dict, so results can go straight to CSV or JSON.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .angles import gen_angles
from .circuit import depth
from .cli import build, parse_method
from .dc import expected_entangled_state
from .statevector import marginal, sample, simulate
from .swap_stats import swap_test_overlap

DEMO_PROBS = (0.6, 0.2, 0.1, 0.1)


@dataclass
class DepthSweepConfig:
    sizes: tuple[int, ...] = (4, 8, 16, 32, 64, 128, 256, 512, 1024)
    methods: tuple[str, ...] = ("mottonen", "dc", "hybrid:4")
    seed: int = 0
    # cnot-basis depth needs the decomposed circuit; Mottonen grows as ~N^2 gates there
    cnot_max_size: int = 256
    timing: bool = True


def depth_sweep(cfg: DepthSweepConfig) -> list[dict]:
    rows = []
    for N in cfg.sizes:
        rng = np.random.default_rng([cfg.seed, N])
        x = rng.normal(size=N)
        x /= np.linalg.norm(x)
        for method in cfg.methods:
            name, block = parse_method(method)
            if name == "hybrid" and block >= N:
                continue
            t0 = time.perf_counter()
            reg = build(x, method)
            elapsed = time.perf_counter() - t0
            n = int(math.log2(N))
            row = {"N": N, "method": method, "width": reg.circuit.width,
                   "depth_abstract": depth(reg.circuit).depth,
                   "depth_cnot": depth(reg.circuit, "cnot").depth if N <= cfg.cnot_max_size else "",
                   "cswap_count": reg.circuit.count("CSWAP"),
                   "dc_depth_law": 1 + n * (n - 1) // 2,
                   "synth_time": f"{elapsed:.6f}" if cfg.timing else ""}
            rows.append(row)
    return rows


@dataclass
class ProofOfConceptConfig:
    shots: int = 1024
    seed: int = 2021
    method: str = "dc"


def proof_of_concept(cfg: ProofOfConceptConfig) -> dict:
    """Load the 4-entry example state, then compare exact and sampled marginals."""
    x = np.sqrt(DEMO_PROBS)
    reg = build(x, cfg.method)
    state = simulate(reg.circuit)
    p = np.array(DEMO_PROBS)
    exact = marginal(state, reg.data_qubits)
    shots = sample(state, reg.data_qubits, cfg.shots, cfg.seed)
    freq = shots.frequencies(len(reg.data_qubits))
    sigma = np.sqrt(p * (1 - p) / cfg.shots)
    out = {"config": asdict(cfg), "angles": list(gen_angles(x).angles),
           "width": reg.circuit.width, "data_qubits": reg.data_qubits,
           "exact_marginals": exact.tolist(), "sampled_frequencies": freq.tolist(),
           "counts": shots.counts, "z_scores": ((freq - p) / sigma).tolist(),
           "within_3_sigma": bool(np.all(np.abs(freq - p) <= 3 * sigma))}
    if cfg.method.startswith("dc"):
        oracle = expected_entangled_state(x, labels=cfg.method == "dc-labels")
        out["fidelity"] = state.fidelity(oracle)
    return out


@dataclass
class SwapSweepConfig:
    sizes: tuple[int, ...] = (2, 4, 8)
    pairs: int = 50
    shots: tuple[int, ...] = (1024, 16384)
    seed: int = 0
    complex_inputs: bool = True


def swap_test_sweep(cfg: SwapSweepConfig) -> list[dict]:
    """Exact swap-test values against the classical sum, and sampled coverage."""
    rows = []
    for N in cfg.sizes:
        rng = np.random.default_rng([cfg.seed, N])
        pairs = []
        for _ in range(cfg.pairs):
            v = rng.normal(size=(2, N))
            if cfg.complex_inputs:
                v = v + 1j * rng.normal(size=(2, N))
            pairs.append(v / np.linalg.norm(v, axis=1, keepdims=True))
        for shots in cfg.shots:
            exact_err, inside, dev = 0.0, 0, []
            for i, (x, y) in enumerate(pairs):
                rep = swap_test_overlap(x, y, shots=shots, seed=cfg.seed * 100003 + i)
                target = float(np.sum(np.abs(x) ** 2 * np.abs(y) ** 2))
                exact_err = max(exact_err, abs(rep.exact_value - target))
                inside += abs(rep.sampled_value - rep.exact_value) <= 3 * rep.sigma()
                dev.append(abs(rep.sampled_value - rep.exact_value))
            rows.append({"N": N, "shots": shots, "pairs": cfg.pairs,
                         "max_exact_error": exact_err,
                         "within_3_sigma": inside / cfg.pairs,
                         "mean_abs_deviation": float(np.mean(dev))})
    return rows
