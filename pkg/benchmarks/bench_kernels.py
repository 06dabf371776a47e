"""Compare the compiled stencil kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py --sizes 16 32 64 --repeat 5
"""
import argparse
import timeit

import numpy as np

from spinor_em import _kernels_py, kernels
from spinor_em.algebra import lambda_matrices


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    try:
        from spinor_em import _kernels_ext as ext
    except ImportError:
        ext = None
        print("compiled extension not built; timing the numpy fallback only")
    lam = np.ascontiguousarray(lambda_matrices()[:3].real)
    rng = np.random.default_rng(0)
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':<22}{'n':>5}{'numpy [ms]':>13}{'cython [ms]':>13}{'speedup':>9}")
    for n in args.sizes:
        phi = np.ascontiguousarray(rng.normal(size=(4, n, n, n)) + 1j * rng.normal(size=(4, n, n, n)))
        f = np.ascontiguousarray(rng.normal(size=(3, n, n, n)))
        cases = [("lambda_grad_centered", "lambda_grad_centered", (phi, lam, 0.1)),
                 ("curl_centered", "curl_centered", (f, 0.1))]
        for label, attr, call in cases:
            t_py = bench(getattr(_kernels_py, attr), call, args.repeat)
            if ext is None:
                print(f"{label:<22}{n:>5}{1e3 * t_py:>13.3f}{'-':>13}{'-':>9}")
                continue
            t_cy = bench(getattr(ext, attr), call, args.repeat)
            print(f"{label:<22}{n:>5}{1e3 * t_py:>13.3f}{1e3 * t_cy:>13.3f}{t_py / t_cy:>8.2f}x")


if __name__ == "__main__":
    main()
