"""Compare the compiled and numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each case is
timed on every available backend and the results are checked for agreement.
"""

import argparse
import time

import numpy as np

from staggered_walk.kernels import BACKENDS
from staggered_walk.state import Circle, InitialState, make_initial


def case_line(kern):
    f = make_initial(InitialState.symmetric(), t_max=1000)
    psi = f.amplitudes.copy()
    kern.coinless_steps(psi, 1000, False)
    return psi


def case_ring(kern):
    f = make_initial(InitialState.origin(), Circle(64))
    psi = f.amplitudes.copy()
    kern.coinless_steps(psi, 10_000, True)
    return psi


def case_wall(kern):
    f = make_initial(InitialState.symmetric(), t_max=1000)
    psi = f.amplitudes.copy()
    absorbed = np.zeros(1000)
    kern.wall_steps(psi, 1000, -f.n_lo, absorbed)
    return absorbed


def case_classical(kern):
    p = np.zeros(4003)
    p[2001] = 1.0
    kern.classical_steps(p, 2000)
    return p


CASES = {
    "line t=1000": case_line,
    "ring N=64 t=10000": case_ring,
    "wall t=1000": case_wall,
    "classical t=2000": case_classical,
}


def best_of(fn, kern, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(kern)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    names = sorted(BACKENDS)
    print(f"{'case':<20}" + "".join(f"{n:>12}" for n in names) + (f"{'speedup':>10}" if len(names) > 1 else ""))
    for label, fn in CASES.items():
        results = {n: best_of(fn, BACKENDS[n], args.repeat) for n in names}
        row = f"{label:<20}" + "".join(f"{results[n][0] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            ref = results[names[0]][1]
            for n in names[1:]:
                if not np.allclose(results[n][1], ref, rtol=0, atol=1e-14):
                    raise SystemExit(f"backends disagree on {label}")
            row += f"{results['python'][0] / results['cython'][0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
