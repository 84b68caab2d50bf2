"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from semiring_rank import _purekernels as pure

try:
    from semiring_rank import _speedups as fast
except ImportError:
    fast = None


def workloads(rng):
    gens16 = [rng.getrandbits(24) for _ in range(16)]
    indep = [1 << i for i in range(18)]
    mix = [rng.getrandbits(12) for _ in range(18)]
    target = 0
    for v in mix[:9]:
        target |= v
    rows = [rng.getrandbits(60) for _ in range(60)]
    vecs = [rng.getrandbits(40) for _ in range(2000)]
    x = rng.getrandbits(40) | rng.getrandbits(40)
    return [
        ("or_span (16 gens, 24 bits)", "or_span", (gens16,)),
        ("or_injective (18 independent)", "or_injective", (indep,)),
        ("count_mixings (18 vecs)", "count_mixings", (mix, target)),
        ("gf2_eliminate (60x60)", "gf2_eliminate", (rows, 60)),
        ("dominated_subset (2000 vecs)", "dominated_subset", (vecs, x)),
    ]


def best_time(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if fast is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':34s} {'pure (ms)':>11s} {'cython (ms)':>12s} {'speedup':>8s}")
    for label, name, fargs in workloads(random.Random(args.seed)):
        tp = best_time(getattr(pure, name), fargs, args.repeat)
        if fast is None:
            print(f"{label:34s} {tp * 1e3:11.3f} {'-':>12s} {'-':>8s}")
            continue
        tf = best_time(getattr(fast, name), fargs, args.repeat)
        print(f"{label:34s} {tp * 1e3:11.3f} {tf * 1e3:12.3f} {tp / tf:7.1f}x")


if __name__ == "__main__":
    main()
