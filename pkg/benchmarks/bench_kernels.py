"""Time the dense-engine kernels under numpy and numba.

    python3 benchmarks/bench_kernels.py [--width 20] [--repeat 5]

Each kernel runs once untimed (numba compilation), then ``--repeat`` times;
the best wall time is reported. Outputs of the two paths are checked against
each other before timing.
"""

import argparse
import time

import numpy as np

from simon_dqc.engine import _kernels as K


def _cases(width, rng):
    vec = rng.standard_normal(1 << width) + 1j * rng.standard_normal(1 << width)
    vec /= np.linalg.norm(vec)
    m = 3
    ctrl_bits = width - 2 * m
    table = rng.integers(0, 1 << m, size=1 << ctrl_bits, dtype=np.int64)
    # improved-style layout with t=1: index(1), two value blocks, target
    value_shifts = np.array([2 * m, m], dtype=np.int64)
    sort_shifts = np.array([width - 2 * m, width - 3 * m], dtype=np.int64)
    mat = vec[: 1 << min(width, 16)].reshape(-1, 1 << 8).copy()
    return {
        "hadamard_qubit": lambda ns: ns.hadamard_qubit(vec.copy(), width // 2),
        "xor_oracle": lambda ns: ns.xor_oracle(vec, 2 * m, (1 << ctrl_bits) - 1, table, 0),
        "multiplex_xor": lambda ns: ns.multiplex_xor(vec, 3 * m, 1, value_shifts, (1 << m) - 1, 0),
        "sort_xor": lambda ns: ns.sort_xor(vec, sort_shifts, (1 << m) - 1, m, 0),
        "fwht_rows": lambda ns: ns.fwht_rows(mat.copy()),
    }


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--width", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if K.NUMBA is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"width {args.width}  ({1 << args.width} amplitudes), best of {args.repeat}")
    print(f"{'kernel':<16}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for name, call in _cases(args.width, rng).items():
        ref, fast = call(K.NUMPY), call(K.NUMBA)
        if not np.allclose(ref, fast, atol=1e-12):
            raise SystemExit(f"{name}: numpy and numba outputs differ")
        t_np = _best(lambda: call(K.NUMPY), args.repeat)
        t_nb = _best(lambda: call(K.NUMBA), args.repeat)
        print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
