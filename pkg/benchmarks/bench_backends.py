"""Time the compiled and pure-Python kernels on the same synthetic volumes.

    python3 benchmarks/bench_backends.py --sizes 32,48,64 --repeats 3
"""
import argparse
import time

import numpy as np

from isoclean import _backend
from isoclean.filtering import filter_components
from isoclean.isosurface import count_cubes, marching_cubes
from isoclean.labeling import FilterMode, label_components
from isoclean.volume import VolumeGrid


def smooth_noise(n, seed):
    """Box-blurred uniform noise scaled to 0..255; gives mixed component sizes."""
    rng = np.random.default_rng(seed)
    arr = rng.uniform(0, 255, (n, n, n))
    for axis in range(3):
        arr = (arr + np.roll(arr, 1, axis) + np.roll(arr, -1, axis)) / 3
    lo, hi = arr.min(), arr.max()
    return VolumeGrid.from_array(np.rint((arr - lo) / (hi - lo) * 255))


STAGES = {
    "label": lambda g, iso: label_components(g, iso, FilterMode.ABOVE),
    "label+filter": lambda g, iso: filter_components(g, iso, 5, FilterMode.ABOVE),
    "census": lambda g, iso: count_cubes(g, iso),
    "marching cubes": lambda g, iso: marching_cubes(g, iso),
}


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="32,48,64")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--isovalue", type=float, default=140.5)
    args = parser.parse_args(argv)

    backends = _backend.available()
    previous = _backend.name()
    print(f"{'n':>4} {'stage':<15}" + "".join(f"{b:>12}" for b in backends)
          + ("     speedup" if len(backends) > 1 else ""))
    try:
        for n in (int(s) for s in args.sizes.split(",")):
            grid = smooth_noise(n, seed=n)
            for stage, fn in STAGES.items():
                times = []
                for b in backends:
                    _backend.set_backend(b)
                    times.append(best_of(lambda: fn(grid, args.isovalue), args.repeats))
                line = f"{n:>4} {stage:<15}" + "".join(f"{t:>11.4f}s" for t in times)
                if len(times) > 1:
                    line += f"{times[1] / times[0]:>11.1f}x"
                print(line)
    finally:
        _backend.set_backend(previous)


if __name__ == "__main__":
    main()
