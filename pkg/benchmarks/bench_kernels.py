"""Benchmark the compiled gate kernels against the pure-Python fallback.

Swaps the active kernel functions on hepgrover.kernels (they are looked up
per call), so the same high-level code paths run on both backends.

Usage: python benchmarks/bench_kernels.py [--qubits N] [--shots N]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from hepgrover import kernels
from hepgrover.encoding import LeptonRecord, encode_v2, group_records, marked_states
from hepgrover.grover import GroverProblem, build_grover
from hepgrover.noise import bundled_profile, noisy_run
from hepgrover.statevector import apply_circuit, new_zero_state

KERNEL_NAMES = ("phase_flip", "phase_s", "flip", "hadamard", "pauli_y")


def use_backend(impl) -> None:
    for name in KERNEL_NAMES:
        setattr(kernels, name, getattr(impl, name))


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_gate_sweep(n):
    def run():
        state = new_zero_state(n)
        for q in range(n):
            kernels.hadamard(state.amps, 1 << q)
        for q in range(n - 1):
            kernels.flip(state.amps, 1 << (q + 1), 1 << q)
        kernels.phase_flip(state.amps, (1 << n) - 1)
        for q in range(n):
            kernels.hadamard(state.amps, 1 << q)

    return time_call(run)


def bench_grover(n):
    circuit = build_grover(GroverProblem(n, frozenset({0}), 2))
    return time_call(lambda: apply_circuit(new_zero_state(n), circuit))


def bench_noisy_search(shots):
    records = [
        LeptonRecord(row=i, event_id=1, instance=v, pt=20.0 + i)
        for i, v in enumerate([0, 1, 2, 3, 0, 1, 2, 0])
    ]
    group = group_records(records, 8)[0]
    circuit = encode_v2(group)
    marked = marked_states(group)
    profile = bundled_profile("melbourne_like")  # high error rate, many trajectories
    return time_call(
        lambda: noisy_run(circuit, marked, profile, shots=shots, seed=7), repeats=2
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=18,
                        help="register width for the kernel sweep (default 18)")
    parser.add_argument("--shots", type=int, default=8192,
                        help="trajectories for the noisy-search case (default 8192)")
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; showing pure-Python numbers only")

    cases = [
        (f"gate sweep, {args.qubits} qubits", lambda: bench_gate_sweep(args.qubits)),
        ("grover n=12, k=2", lambda: bench_grover(12)),
        (f"noisy search, {args.shots} shots", lambda: bench_noisy_search(args.shots)),
    ]

    results = {}
    for name, impl in backends.items():
        use_backend(impl)
        results[name] = [fn() for _, fn in cases]
    use_backend(backends.get("compiled", backends["python"]))

    width = max(len(label) for label, _ in cases)
    header = f"{'case':<{width}}  " + "".join(f"{name:>12}" for name in results)
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for i, (label, _) in enumerate(cases):
        row = f"{label:<{width}}  "
        row += "".join(f"{results[name][i] * 1e3:>10.2f}ms" for name in results)
        if len(results) == 2:
            row += f"{results['python'][i] / results['compiled'][i]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
