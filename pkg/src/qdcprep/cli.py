"""Command-line driver: ``qdcprep {synth,verify,bench,swaptest}``.

Exit codes: 0 success, 2 input error, 3 resource error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import circuit as ir
from .angles import check_vector, gen_angles
from .dc import dc_prepare, expected_entangled_state, hybrid_circuit
from .errors import InputError, ResourceError
from .statevector import default_threads, marginal, simulate
from .swap_stats import cyclic_exy, moment_statistics, swap_test_overlap
from .topdown import mottonen_circuit

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_VERIFY = 0, 2, 3, 4


def read_vector(path: str, normalize: bool = False) -> np.ndarray:
    """Load a JSON array of numbers, or of ``[re, im]`` pairs."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read vector file {path!r}: {exc}") from exc
    if not isinstance(raw, list):
        raise InputError("vector file must hold a JSON array")
    try:
        if raw and all(isinstance(v, list) for v in raw):
            if any(len(v) != 2 for v in raw):
                raise InputError("complex entries must be [re, im] pairs")
            arr = np.array([complex(re, im) for re, im in raw])
        else:
            arr = np.array([float(v) for v in raw])
    except (TypeError, ValueError) as exc:
        raise InputError(f"vector file holds non-numeric entries: {exc}") from exc
    return check_vector(arr, normalize)


def parse_method(method: str) -> tuple[str, int | None]:
    if method in ("mottonen", "dc", "dc-labels"):
        return method, None
    if method.startswith("hybrid:"):
        try:
            return "hybrid", int(method.split(":", 1)[1])
        except ValueError:
            pass
    raise InputError(f"unknown method {method!r}; expected mottonen, dc, dc-labels or hybrid:k")


def build(x: np.ndarray, method: str):
    name, block = parse_method(method)
    if name == "mottonen":
        if np.iscomplexobj(x):
            raise InputError("mottonen loads real vectors only")
        return mottonen_circuit(gen_angles(x))
    if name == "dc":
        return dc_prepare(x)
    if name == "dc-labels":
        return dc_prepare(x, labels=True)
    return hybrid_circuit(x, block)


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _sim_options(args) -> dict:
    threads = args.threads if args.threads is not None else default_threads()
    return {"kernel": "amplitude-map" if threads > 1 else "dense", "threads": threads}


def cmd_synth(args) -> int:
    x = read_vector(args.input, args.normalize)
    reg = build(x, args.method)
    circ = reg.circuit
    if args.format == "qasm" and any(g.kind not in ir.QASM_NAMES for g in circ.gates):
        circ = ir.decompose(circ)
    _emit(ir.export(circ, args.format), args.out)
    return EXIT_OK


def verify_report(x: np.ndarray, method: str, tolerance: float, **sim) -> dict:
    reg = build(x, method)
    state = simulate(reg.circuit, **sim)
    name, block = parse_method(method)
    if name == "mottonen":
        fidelity = abs(np.vdot(x, state.amplitudes))
        amp_err = float(np.max(np.abs(state.amplitudes - x)))
    else:
        oracle = expected_entangled_state(x, block=block or 2, labels=name == "dc-labels")
        fidelity = state.fidelity(oracle)
        amp_err = None
    marg_err = float(np.max(np.abs(marginal(state, reg.data_qubits) - np.abs(x) ** 2)))
    ok = abs(1.0 - fidelity) <= tolerance and marg_err <= tolerance
    if amp_err is not None:
        ok = ok and amp_err <= tolerance
    report = {"method": method, "N": int(x.size), "width": reg.circuit.width,
              "fidelity": float(fidelity), "max_marginal_error": marg_err,
              "tolerance": tolerance, "pass": bool(ok)}
    if amp_err is not None:
        report["max_amplitude_error"] = amp_err
    return report


def cmd_verify(args) -> int:
    x = read_vector(args.input, args.normalize)
    report = verify_report(x, args.method, args.tolerance, **_sim_options(args))
    _emit(json.dumps(report, indent=1, sort_keys=True) + "\n", args.out)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def bench_rows(sizes, methods, basis: str = "abstract", seed: int = 0, timing: bool = True):
    """Synthesis-only depth/width table; one random real vector per size."""
    rows = []
    for N in sizes:
        rng = np.random.default_rng([seed, N])
        x = rng.normal(size=N)
        x /= np.linalg.norm(x)
        for method in methods:
            name, block = parse_method(method)
            if name == "hybrid" and block >= N:
                continue
            t0 = time.perf_counter()
            reg = build(x, method)
            elapsed = time.perf_counter() - t0
            rep = ir.depth(reg.circuit, basis)
            rows.append({"N": N, "method": method, "depth": rep.depth, "width": rep.width,
                         "cswap_count": reg.circuit.count("CSWAP"),
                         "synth_time": f"{elapsed:.6f}" if timing else ""})
    return rows


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    methods = [m for m in args.methods.split(",") if m]
    for m in methods:
        parse_method(m)
    rows = bench_rows(sizes, methods, args.basis, args.seed, timing=not args.no_timing)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["N", "method", "depth", "width", "cswap_count", "synth_time"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_swaptest(args) -> int:
    x = read_vector(args.x, args.normalize)
    y = read_vector(args.y, args.normalize)
    if args.variant == "overlap":
        report = swap_test_overlap(x, y, args.shots, args.seed)
    elif args.variant == "cyclic":
        if not (args.px and args.py):
            raise InputError("cyclic variant needs --px and --py distribution files")
        px = _read_distribution(args.px)
        py = _read_distribution(args.py)
        report = cyclic_exy(px, x, py, y, args.shots, args.seed)
    else:
        report = moment_statistics(x, y, args.variant, args.ex_squared, args.shots, args.seed)
    _emit(report.to_json() + "\n", args.out)
    return EXIT_OK


def _read_distribution(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            return np.array([float(v) for v in json.load(fh)])
    except (OSError, ValueError, TypeError) as exc:
        raise InputError(f"cannot read distribution file {path!r}: {exc}") from exc


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdcprep", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None,
                   help="simulator worker threads (default: $QDCPREP_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize a state-preparation circuit")
    s.add_argument("input")
    s.add_argument("--method", default="dc")
    s.add_argument("--out", "-o")
    s.add_argument("--format", choices=["json", "qasm"], default="json")
    s.add_argument("--normalize", action="store_true")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="simulate a synthesized circuit against its oracle")
    v.add_argument("input")
    v.add_argument("--method", default="dc")
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.add_argument("--out", "-o")
    v.add_argument("--normalize", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="depth/width table (synthesis only)")
    b.add_argument("--sizes", default="4,8,16,32,64,128,256,512,1024")
    b.add_argument("--methods", default="mottonen,dc")
    b.add_argument("--basis", choices=["abstract", "cnot"], default="abstract")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--no-timing", action="store_true", help="leave synth_time empty (byte-stable output)")
    b.add_argument("--out", "-o")
    b.set_defaults(func=cmd_bench)

    w = sub.add_parser("swaptest", help="swap-test statistics between encoded vectors")
    w.add_argument("x")
    w.add_argument("y")
    w.add_argument("--variant", default="overlap",
                   choices=["overlap", "expectation", "second_moment", "variance",
                            "covariance_uniform", "cyclic"])
    w.add_argument("--px")
    w.add_argument("--py")
    w.add_argument("--ex-squared", type=float)
    w.add_argument("--shots", type=int)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", "-o")
    w.add_argument("--normalize", action="store_true")
    w.set_defaults(func=cmd_swaptest)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
