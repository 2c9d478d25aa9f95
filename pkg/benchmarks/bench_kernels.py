"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from eigencurve import _pykernels
from eigencurve.special import _log_diagonal_seed

try:
    from eigencurve import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = np.random.default_rng(0)
    x = np.ascontiguousarray(rng.uniform(-1, 1, 4096))
    for l, m in [(256, 128), (2048, 1024), (8192, 4096)]:
        seed = _log_diagonal_seed(m)
        yield f"legendre_bar l={l} m={m} n=4096", "legendre_bar", (l, m, x, seed)
    one = np.zeros(1)
    yield "legendre_bar l=2048 m=1024 n=1", "legendre_bar", (2048, 1024, one, _log_diagonal_seed(1024))
    for n, k in [(4096, 1), (16384, 64), (4096, 400)]:
        v = np.ascontiguousarray(rng.normal(size=n) + 1j * rng.normal(size=n))
        s = np.ascontiguousarray(np.linspace(0, 2 * np.pi, n, endpoint=False))
        nus = np.ascontiguousarray(rng.uniform(-500, 500, k))
        yield f"trig_sums n={n} nus={k}", "trig_sums", (v, s, nus)


def bench(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    print(f"{'kernel':<36} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, fargs in cases():
        t_py = bench(getattr(_pykernels, name), fargs, args.repeat)
        if _ckernels is None:
            print(f"{label:<36} {t_py * 1e3:10.3f} {'n/a':>10} {'':>8}")
            continue
        t_c = bench(getattr(_ckernels, name), fargs, args.repeat)
        print(f"{label:<36} {t_py * 1e3:10.3f} {t_c * 1e3:10.3f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
