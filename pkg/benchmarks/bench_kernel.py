"""Compare the compiled and pure-Python PBW kernels.

Each run builds a fresh kernel (cold memo tables) and computes the power
F**(K+1) of the rank-2 twist for the extended twist at (N, K).

    python benchmarks/bench_kernel.py --n 4 --order 4 --repeat 3
"""
import argparse
import time

from jtwist import _pykernel
from jtwist.twist import canonical_twist

try:
    from jtwist import _ckernel
except ImportError:  # extension not built
    _ckernel = None


def _lower(g):
    return {(i, j): tuple(sorted(v.items())) for (i, j), v in g._br.items() if i > j}


def _workload(kernel_cls, g, F, K):
    k = kernel_cls(g.dim, _lower(g))
    t0 = time.perf_counter()
    out = F.layers
    for _ in range(K):
        out = k.graded_mul(out, F.layers, K, 2)
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()

    tw = canonical_twist(a.n, a.order)
    g, F = tw.algebra, tw.F
    backends = [("python", _pykernel.PBWKernel)]
    if _ckernel is not None:
        backends.append(("cython", _ckernel.PBWKernel))
    else:
        print("compiled kernel not built; timing the pure kernel only")

    results = {}
    for name, cls in backends:
        times = []
        for _ in range(a.repeat):
            dt, out = _workload(cls, g, F, a.order)
            times.append(dt)
        results[name] = (min(times), out)
        print(f"{name:7s} N={a.n} K={a.order}  best {min(times) * 1e3:8.1f} ms"
              f"  ({sum(len(l) for l in out)} terms)")
    if len(results) == 2:
        same = results["python"][1] == results["cython"][1]
        print(f"speedup {results['python'][0] / results['cython'][0]:.2f}x, identical output: {same}")


if __name__ == "__main__":
    main()
