"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--points 65536] [--atoms 32] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from blochlab import kernels


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--points", type=int, default=1 << 16)
    p.add_argument("--atoms", type=int, default=32)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    rng = np.random.default_rng(0)
    th = np.linspace(-np.pi, np.pi, args.points, endpoint=False)
    zs = 0.999 * np.exp(1j * th)
    a = 0.95 * np.sqrt(rng.uniform(size=args.atoms)) * np.exp(1j * rng.uniform(-np.pi, np.pi, args.atoms))
    w = rng.normal(size=args.atoms) + 1j * rng.normal(size=args.atoms)
    cases = {
        "mobius_sum": (w, a, zs),
        "pole_sum": (w, a, zs, 2),
        "blaschke_eval": (a, zs),
        "separation_logs": (np.concatenate([a] * 16),),
    }
    names = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND}; points={args.points} atoms={args.atoms}")
    print(f"{'kernel':<16}" + "".join(f"{n:>14}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for fn, fargs in cases.items():
        best = {}
        for n in names:
            f = getattr(kernels.get_backend(n), fn)
            best[n] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat))
        row = f"{fn:<16}" + "".join(f"{best[n] * 1e3:>12.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['compiled']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
