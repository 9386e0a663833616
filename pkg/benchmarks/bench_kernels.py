"""Compare the numba and pure-numpy kernels on representative workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--size N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from strohwf import PointForceLoading, _kernels, bimaterial_system, reference_pair


def workloads(size: int):
    system = bimaterial_system(*reference_pair()).with_beta(-0.3)
    p, c = system.packed
    rng = np.random.default_rng(0)
    lam = np.exp(rng.uniform(np.log(0.05), np.log(20.0), size))
    rho = rng.uniform(-0.9, 6.0, size)
    eta = np.geomspace(1e-6, 1e3, size).astype(np.complex128)
    xs, fmean, fjump = PointForceLoading.three_point(1.0, 1.0, 0.4).decompose()
    fmean = fmean.astype(np.complex128)
    fjump = fjump.astype(np.complex128)
    return {
        "quartic_roots": lambda impl: impl(lam, rho),
        "wf_matrices": lambda impl: impl(eta, 1, p, c),
        "betti_envelope": lambda impl: impl(eta, 1, p, c, xs, fmean, fjump),
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--size", type=int, default=4096)
    args = parser.parse_args(argv)
    if not _kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call in workloads(args.size).items():
        np_impl = getattr(_kernels, f"numpy_{name}")
        nb_impl = getattr(_kernels, f"numba_{name}")
        call(nb_impl)  # compile outside the timed region
        t_np = min(timeit.repeat(lambda: call(np_impl), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: call(nb_impl), number=1, repeat=args.repeat))
        print(f"{name:<16}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
