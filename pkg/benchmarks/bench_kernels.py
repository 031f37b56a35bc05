"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--X 2000000]

Both backends are imported directly so one process can time them side by
side; results are checked for equality before timings are printed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from genuslab import _fallback
from genuslab.sieve import primes_up_to

try:
    from genuslab import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(X):
    primes = primes_up_to(X)
    rng = np.random.default_rng(0)
    ell = primes_up_to(10**4)
    mods = np.repeat(ell, 2)
    res = np.concatenate([[0, int(rng.integers(0, p))] for p in ell.tolist()]).astype(np.int64)

    def fill(mod):
        def run():
            out = np.zeros(X, dtype=np.uint8)
            for a, b, c in [(1, 1, 6), (2, 1, 3), (2, -1, 3)]:
                mod.fill_represented(a, b, c, 1, X + 1, False, out)
            return out
        return run

    return [
        ("fill_represented D=-23", fill),
        ("prime_forms D=-23", lambda mod: (lambda: mod.prime_forms(-23, primes))),
        ("residue_sieve_count", lambda mod: (lambda: mod.residue_sieve_count(X, mods, res))),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--X", type=int, default=2_000_000)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    print(f"X = {args.X}, best of {args.repeat}")
    print(f"{'kernel':<26s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, make in cases(args.X):
        tp, outp = best_of(make(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:<26s} {tp:11.4f} {'n/a':>11s} {'':>8s}")
            continue
        tc, outc = best_of(make(_kernels), args.repeat)
        if not same(outp, outc):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<26s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
