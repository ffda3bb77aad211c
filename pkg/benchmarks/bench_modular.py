"""Time the compiled and pure-Python modular Smith kernels on random matrices.

    python3 benchmarks/bench_modular.py [--sizes 8 16 32] [--repeat 3]

Both kernels receive identical inputs; their outputs are compared before any
timing is reported.
"""
import argparse
import random
import timeit

from ramforge.exactalg.backend import available_backends, modular_smith
from ramforge.exactalg.rings import DEFAULT_GUARD


def random_matrix(rng, n, p, N):
    m = p ** N
    # mix of units and high-valuation entries, so pivot selection matters
    return [[rng.randrange(m) * p ** rng.choice((0, 0, 1, 2)) % m for _ in range(n)] for _ in range(n)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--precision", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the pure-Python kernel only")
    p, N = args.prime, args.precision
    m, limit = p ** N, N - DEFAULT_GUARD
    rng = random.Random(args.seed)
    print(f"{'n':>4} " + " ".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        A = random_matrix(rng, n, p, N)
        results = {b: modular_smith([list(r) for r in A], n, n, m, p, limit, backend=b) for b in backends}
        outs = list(results.values())
        if any(o != outs[0] for o in outs):
            raise SystemExit(f"backends disagree at n = {n}")
        times = {}
        for b in backends:
            t = timeit.repeat(lambda b=b: modular_smith([list(r) for r in A], n, n, m, p, limit, backend=b),
                              number=1, repeat=args.repeat)
            times[b] = min(t)
        line = f"{n:>4} " + " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"  {times['python'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
