"""Compare the compiled and pure-Python finite-field kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from legendre_tower import _pykernels

try:
    from legendre_tower import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    p = 1_000_003
    for deg in (20, 100, 400):
        a = [rng.randrange(p) for _ in range(deg + 1)]
        b = [rng.randrange(p) for _ in range(deg + 1)]
        yield f"poly_mul_mod deg={deg}", "poly_mul_mod", (a, b, p)
    for q in (10007, 100003, 999983):
        yield f"count_points_fp p={q}", "count_points_fp", (3, 5, 0, q)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"{'case':<28}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, name, call_args in cases(rng):
        py = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py(*call_args), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{label:<28}{t_py:>12.2f}{'n/a':>12}{'':>10}")
            continue
        cy = getattr(_ckernels, name)
        if name == "poly_mul_mod":
            assert list(cy(*call_args)) == list(py(*call_args))
        else:
            assert cy(*call_args) == py(*call_args)
        t_cy = min(timeit.repeat(lambda: cy(*call_args), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<28}{t_py:>12.2f}{t_cy:>12.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
