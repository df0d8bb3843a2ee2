"""Time the compiled and pure-Python kernel backends on representative inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hybridtn import kernels


def _workloads(rng):
    n = 14
    state = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    state /= np.linalg.norm(state)
    other = np.roll(state, 1)
    gate = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    k = 10
    psi = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    xm = rng.integers(0, 2**k, 4096)
    zm = rng.integers(0, 2**k, 4096)
    mats = rng.standard_normal((100_000, 2, 2)) + 1j * rng.standard_normal((100_000, 2, 2))
    return {
        "apply_1q (14 qubits, all sites)": lambda b: [b.apply_1q(state, s, n, gate) for s in range(n)],
        "pauli_overlaps (k=10, 4096 strings)": lambda b: b.pauli_overlaps(psi, other[: 2**k], xm, zm),
        "opnorm_gamma_2x2 (1e5 matrices)": lambda b: b.opnorm_gamma_2x2(mats),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled backend not available; build with `python3 setup.py build_ext --inplace`")
    work = _workloads(np.random.default_rng(args.seed))
    print(f"{'workload':40s} " + " ".join(f"{name:>12s}" for name in backends) + "   speedup")
    for label, fn in work.items():
        times = {}
        for name, mod in backends.items():
            fn(mod)  # warm-up
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = " ".join(f"{times[name] * 1e3:10.2f}ms" for name in backends)
        print(f"{label:40s} {cols}   {speed:6.2f}x")


if __name__ == "__main__":
    main()
