"""Time the compiled and numpy summation kernels on the same workloads.

    python benchmarks/bench_kernels.py [--points 20000] [--repeat 5]

Workloads mirror the package's hot paths: hyper-Bessel values on a grid
(order 3 and 5), cos_m on a complex grid, the large-argument regime where
each point needs many terms, and one-point calls as made by the scalar
evaluators and the CLI's per-row ``eval``.
"""
import argparse
import timeit

import numpy as np

from cyclic_dunkl.kernels import backends

TOL = 2.0**-54


def workloads(n):
    rng = np.random.default_rng(0)
    x = np.linspace(0.01, 10, n)
    z = rng.uniform(-4, 4, n) + 1j * rng.uniform(-4, 4, n)
    return {
        "hyper-bessel m=3": (-((x / 3) ** 3).astype(complex), np.array([1.0, 1.2, 1.4])),
        "hyper-bessel m=5": (-((x / 5) ** 5).astype(complex), np.array([1.0, 1.1, 1.3, 1.6, 2.2])),
        "cos_4 complex grid": (-((z / 4) ** 4), np.arange(1, 5) / 4),
        "large argument m=2": (-((np.linspace(20, 40, n) / 2) ** 2).astype(complex), np.array([1.0, 1.5])),
    }


def _time(mod, w, a, repeat):
    mod.hyp0f_sum(w, a, TOL, 5000)
    return min(timeit.repeat(lambda: mod.hyp0f_sum(w, a, TOL, 5000), number=1, repeat=repeat))


def _time_points(mod, pts, a, repeat):
    def run():
        for p in pts:
            mod.hyp0f_sum(p, a, TOL, 5000)

    return min(timeit.repeat(run, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = backends()
    if "cython" not in impls:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'workload':<22}" + "".join(f"{name:>12}" for name in impls) + ("     speedup" if len(impls) > 1 else ""))
    for label, (w, a) in workloads(args.points).items():
        times = {}
        for name, mod in impls.items():
            times[name] = _time(mod, w, a, args.repeat)
        row = f"{label:<22}" + "".join(f"{1e3 * t:>10.2f}ms" for t in times.values())
        if len(times) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)
    w, a = workloads(args.points)["hyper-bessel m=3"]
    pts = [w[i : i + 1] for i in range(0, w.size, max(1, w.size // 2000))]
    times = {name: _time_points(mod, pts, a, args.repeat) for name, mod in impls.items()}
    row = f"{'one-point calls':<22}" + "".join(f"{1e3 * t:>10.2f}ms" for t in times.values())
    if len(times) > 1:
        row += f"{times['python'] / times['cython']:>11.1f}x"
    print(row)


if __name__ == "__main__":
    main()
