"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--number 2000]

Times each compiled index kernel on the shapes the sweep uses (27x27
tripartite, 9x9 pair) and one full Case 1 sweep per backend. Matrix
products are BLAS calls in both backends and are not listed.
"""
import argparse
import timeit

import numpy as np

from qutrit_lab import _backend
from qutrit_lab.experiments import SweepConfig, run_sweep


def _inputs(rng):
    def c(n):
        return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))

    big, pair, three = c(27), c(9), c(3)
    return {
        "kron 9x9 (x) 3x3": lambda k: k.kron(pair, three),
        "partial_trace 27 -> 9": lambda k: k.partial_trace(big, (3, 3, 3), 2),
        "partial_transpose 9x9": lambda k: k.partial_transpose(pair, 3, 3, 1),
        "realign 9x9": lambda k: k.realign(pair, 3, 3),
    }


def _best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=2000)
    ap.add_argument("--t-steps", type=int, default=1001)
    args = ap.parse_args()

    backends = _backend.available()
    cases = _inputs(np.random.default_rng(0))
    print(f"backends: {', '.join(backends)}")
    header = f"{'kernel':26}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn in cases.items():
        times = {b: _best(lambda: fn(_backend._BACKENDS[b]), args.repeat, args.number) for b in backends}
        row = f"{label:26}" + "".join(f"{times[b] * 1e6:11.2f} us" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:9.2f}x"
        print(row)

    cfg = SweepConfig(case="1", eps_grid=[(1, 1, 0.3)], d_values=[0.2], t_max=30.0,
                      t_steps=args.t_steps, generator="spin1")
    sweep = {}
    previous = _backend.name
    try:
        for b in backends:
            _backend.use(b)
            sweep[b] = min(timeit.repeat(lambda: run_sweep(cfg), repeat=3, number=1))
    finally:
        _backend.use(previous)
    row = f"{f'sweep ({args.t_steps} steps)':26}" + "".join(f"{sweep[b] * 1e3:11.1f} ms" for b in backends)
    if len(backends) == 2:
        row += f"{sweep['python'] / sweep['compiled']:9.2f}x"
    print(row)


if __name__ == "__main__":
    main()
