"""Benchmark the compiled kernels against the pure-NumPy fallback.

Times the workloads that dominate an EP-contour trace: continuant
determinant batches, Sylvester-determinant discriminant batches, dense
LU determinants, and an end-to-end discriminant grid.

    python3 benchmarks/bench_kernels.py [--points 20000] [--n 7]
"""

import argparse
import time

import numpy as np

from nhlat import _kernels_py

try:
    from nhlat import _kernels_cy
except ImportError:
    _kernels_cy = None


def timeit(fn, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(n, npoints, rng):
    deltas = rng.uniform(-2, 2, size=npoints)
    gammas = rng.uniform(0.1, 2, size=npoints)
    alpha = np.ones(n, dtype=complex)
    alpha[-1] = 0.0
    nodes = 2.5 * np.cos(np.pi * (np.arange(n + 1) + 0.5) / (n + 1))
    coeffs = rng.normal(size=(npoints, n + 1)) + 1j * rng.normal(size=(npoints, n + 1))
    coeffs[:, -1] = 1.0
    dense = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    dense_lams = rng.normal(size=200) + 1j * rng.normal(size=200)

    def charpoly_grid(impl):
        z = np.zeros(n, dtype=complex)
        for d, g in zip(deltas, gammas):
            z[0] = d + 1j * g
            z[-1] = d - 1j * g
            impl.charpoly_dets(alpha, alpha, z, nodes)

    def disc_batch(impl):
        impl.batch_disc(coeffs)

    def lu(impl):
        impl.dense_charpoly_dets(dense, dense_lams)

    return [
        (f"charpoly_dets grid ({npoints} pts, n={n})", charpoly_grid),
        (f"batch_disc ({npoints} polys, degree {n})", disc_batch),
        ("dense_charpoly_dets (12x12, 200 nodes)", lu),
    ]


def end_to_end(resolution):
    from nhlat import exceptional as ep

    fam = ep.uniform_defect_family(5, 1, box=((-2.0, 2.0), (0.2, 2.0)))

    def run():
        ep.ep_locus(fam, resolution=resolution)

    return run


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--n", type=int, default=7)
    parser.add_argument("--resolution", type=int, default=96)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    impls = [("python", _kernels_py)]
    if _kernels_cy is not None:
        impls.append(("cython", _kernels_cy))
    else:
        print("compiled extension not built; run "
              "`python3 setup.py build_ext --inplace` to compare")

    print(f"{'workload':44s}" + "".join(f"{name:>12s}" for name, _ in impls)
          + ("     speedup" if len(impls) == 2 else ""))
    rows = workloads(args.n, args.points, rng)
    for label, fn in rows:
        times = [timeit(lambda impl=impl: fn(impl)) for _, impl in impls]
        line = f"{label:44s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:11.1f}x"
        print(line)

    # end-to-end trace uses whichever backend nhlat.kernels selected
    import nhlat
    t = timeit(end_to_end(args.resolution), repeats=1)
    print(f"\nep_locus end-to-end (n=5, {args.resolution}x{args.resolution}) "
          f"with '{nhlat.BACKEND}' backend: {t * 1e3:.0f}ms")


if __name__ == "__main__":
    main()
