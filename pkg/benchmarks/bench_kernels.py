"""Time the numba and numpy kernel paths side by side.

    python benchmarks/bench_kernels.py --sizes 10 14 18 --repeat 5

Numba compile time is excluded (one warm-up call per kernel).
"""
import argparse
import time

import numpy as np

from satqaoa import kernels
from satqaoa.hamiltonian import _term_arrays, build_problem
from satqaoa.mwis import MwisInstance, solve_exact


def random_instance(rng, n, density=0.3):
    edges = [(i, j) for i in range(n) for j in range(i) if rng.random() < density]
    return MwisInstance.from_edges(rng.uniform(0.5, 5.0, n).tolist(), edges)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(n, repeat, rng):
    inst = random_instance(rng, n)
    h = build_problem(inst, 2.0)
    args = (n, h.constant, *_term_arrays(h))
    rows = []
    for name in kernels.AVAILABLE:
        k = kernels.get_backend(name)
        table = k.energy_table(*args)
        amp = np.full(1 << n, 2 ** (-n / 2), dtype=np.complex128)
        k.phase(amp, table, 0.1)
        k.mixer(amp, n, 0.1)
        k.expectation(amp, table)

        def layer():
            k.phase(amp, table, 0.3)
            k.mixer(amp, n, 0.7)

        rows.append(
            (
                name,
                best_of(lambda: k.energy_table(*args), repeat),
                best_of(layer, repeat),
                best_of(lambda: k.expectation(amp, table), repeat),
            )
        )
    return rows


def bench_exact(n, repeat, rng):
    inst = random_instance(rng, n)
    out = []
    for name in kernels.AVAILABLE:
        solve_exact(inst, backend=name)
        out.append((name, best_of(lambda: solve_exact(inst, backend=name), repeat)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 14, 18])
    ap.add_argument("--exact-sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'n':>3} {'backend':>7} {'table[ms]':>10} {'layer[ms]':>10} {'expval[ms]':>10}")
    for n in args.sizes:
        for name, t_table, t_layer, t_exp in bench(n, args.repeat, rng):
            print(f"{n:>3} {name:>7} {1e3 * t_table:>10.3f} {1e3 * t_layer:>10.3f} {1e3 * t_exp:>10.3f}")
    print()
    print(f"{'n':>3} {'backend':>7} {'exact[ms]':>10}")
    for n in args.exact_sizes:
        for name, t in bench_exact(n, max(1, args.repeat // 2), rng):
            print(f"{n:>3} {name:>7} {1e3 * t:>10.3f}")


if __name__ == "__main__":
    main()
