"""Compare the numba kernels with the numpy fallback on stacks of small matrices.

Both backends are called directly, so the ``GENNUM_NUMBA`` flag does not
matter here. Run from the repository root::

    python3 benchmarks/bench_kernels.py [--stack 32] [--repeat 200]
"""

import argparse
import timeit

import numpy as np

from gennum import kernels


def _inputs(rng, stack, n):
    a = rng.standard_normal((stack, n, n))
    sym = a + a.transpose(0, 2, 1)
    spd = np.einsum("kij,klj->kil", a, a) + n * np.eye(n)
    return {
        "jacobi_eigh": (sym,),
        "lu_det": (a,),
        "gj_inverse": (a,),
        "mgs": (spd, a),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--stack", type=int, default=32, help="matrices per call (one per grid index)")
    p.add_argument("--repeat", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend can be timed")
    kernels.warmup()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<12} {'n':>2} {'numba us':>10} {'numpy us':>10} {'speedup':>8}")
    for n in (2, 3, 4, 6):
        data = _inputs(rng, args.stack, n)
        for name, xs in data.items():
            xs = tuple(np.ascontiguousarray(x) for x in xs)
            row = {}
            for backend in ("numba", "numpy"):
                if backend == "numba" and not kernels.HAVE_NUMBA:
                    continue
                fn = kernels.BACKENDS[backend][name]
                fn(*xs)
                t = timeit.timeit(lambda: fn(*xs), number=args.repeat)
                row[backend] = 1e6 * t / args.repeat
            nb = row.get("numba", float("nan"))
            print(f"{name:<12} {n:>2} {nb:>10.1f} {row['numpy']:>10.1f} {row['numpy'] / nb:>7.1f}x")


if __name__ == "__main__":
    main()
