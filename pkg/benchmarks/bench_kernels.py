"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Both backends run the same workloads in one process; the library looks the
kernels up on ``mssbound.kernels`` at call time, so swapping attributes there
switches backend.
"""
import argparse
import random
import statistics
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import gen  # noqa: E402
from mssbound import _kernels_py, kernels  # noqa: E402
from mssbound.multilinear import mixed_char_poly, truncated_determinant  # noqa: E402
from mssbound.poly import char_poly, largest_root  # noqa: E402
from mssbound.search import lift_for_partition  # noqa: E402

NAMES = ("affine_mul_acc", "subset_mul", "signed_pairing", "sign_variations")


@contextmanager
def backend(mod):
    saved = {n: getattr(kernels, n) for n in NAMES}
    for n in NAMES:
        setattr(kernels, n, getattr(mod, n))
    try:
        yield
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def workloads(seed):
    rng = random.Random(seed)
    dense = [gen.psd(rng, 5, bound=4) for _ in range(8)]
    real = [gen.psd(rng, 6, bound=4, complex_prob=0) for _ in range(10)]
    vs = gen.vector_system(random.Random(seed + 1), mmax=8, dmax=4)
    while len(vs) < 6:
        vs = gen.vector_system(rng, mmax=8, dmax=4)
    lifted = [s.expected_outer() for s in lift_for_partition(vs, 3).instance.specs]
    polys = [char_poly(gen.matrix(rng, 6, bound=9)) for _ in range(20)]
    return {
        "truncated_determinant d=5 m=8 (complex)": lambda: truncated_determinant(dense),
        "truncated_determinant d=6 m=10 (real)": lambda: truncated_determinant(real),
        f"mixed_char_poly lifted r=3 m={len(vs)}": lambda: mixed_char_poly(lifted),
        "largest_root x20 deg 6, 2^-40": lambda: [largest_root(p, Fraction(1, 2**40)) for p in polys],
    }


def timeit(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    try:
        from mssbound import _ckernels
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1

    print(f"{'workload':42s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.seed).items():
        with backend(_kernels_py):
            ref = fn()
            t_py = timeit(fn, args.repeat)
        with backend(_ckernels):
            if fn() != ref:
                print(f"{name}: backends disagree")
                return 2
            t_cy = timeit(fn, args.repeat)
        print(f"{name:42s} {t_py * 1e3:9.1f}ms {t_cy * 1e3:9.1f}ms {t_py / t_cy:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
