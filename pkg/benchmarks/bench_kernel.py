"""Compare the interpreted and compiled integer-matrix kernels.

The hot loop of the whole package is Smith reduction with transforms plus
the derived solve/kernel routines; this script times both implementations
on the same inputs and checks they agree bit for bit.

    python benchmarks/bench_kernel.py [--size N] [--trials K]
"""

import argparse
import random
import time

from prolim import _intkernel as pure

try:
    from prolim import _intkernel_c as compiled
except ImportError:
    compiled = None


def make_cases(rng, trials, size, bound):
    cases = []
    for _ in range(trials):
        m = rng.randrange(1, size + 1)
        n = rng.randrange(1, size + 1)
        cases.append([[rng.randrange(-bound, bound + 1) for _ in range(n)] for _ in range(m)])
    return cases


def bench(mod, cases):
    t0 = time.perf_counter()
    out = []
    for a in cases:
        u, d, v, ui, vi = mod.smith_with_transforms([row[:] for row in a])
        out.append(d)
        b = [row[0] if row else 0 for row in a]
        mod.solve([row[:] for row in a], b)
        mod.kernel_columns([row[:] for row in a])
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=6, help="max matrix dimension")
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--bound", type=int, default=20, help="max |entry|")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = make_cases(rng, args.trials, args.size, args.bound)

    t_pure, d_pure = bench(pure, cases)
    print(f"pure Python : {t_pure * 1000:8.1f} ms  ({args.trials} cases)")
    if compiled is None:
        print("compiled    : not built (pip install -e . with Cython available)")
        return
    t_comp, d_comp = bench(compiled, cases)
    assert d_pure == d_comp, "implementations disagree"
    print(f"compiled    : {t_comp * 1000:8.1f} ms  ({args.trials} cases)")
    print(f"speedup     : {t_pure / t_comp:8.2f}x  (results identical)")


if __name__ == "__main__":
    main()
