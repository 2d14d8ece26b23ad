"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--trials N] [--repeat R]
"""
import argparse
import time

import numpy as np

from photonpair import _backend, hom
from photonpair.cascade import RoutingHypothesis, simulate_cascade


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    taus = np.linspace(0, 3, 200)
    profiles = [hom.SpectralProfile(1.0, s) for s in (1.0, 0.75, 0.5, 0.25)]
    hom.dip_curve(taus, profiles)  # build quadrature rules once

    cases = {
        f"cascade {h.short_name} x{args.trials}": (
            lambda b, h=h: simulate_cascade(h, args.trials, 1, backend=b)
        )
        for h in RoutingHypothesis
    }
    cases["homdip sweep 4x200"] = lambda b: hom.dip_curve(taus, profiles, backend=b)

    names = sorted(_backend.AVAILABLE)
    print(f"{'case':<34}" + "".join(f"{n:>12}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        t = {n: best_of(lambda: fn(n), args.repeat) for n in names}
        line = f"{label:<34}" + "".join(f"{t[n] * 1e3:>10.1f}ms" for n in names)
        if "cython" in t:
            line += f"   {t['python'] / t['cython']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
