"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--trials 300] [--repeat 2000]
"""
import argparse
import time

import numpy as np

from eeenum import _backend
from eeenum.array_model import ScenarioConfig
from eeenum.enumerators import EnumMethod
from eeenum.experiments import run_batch
from eeenum.kernel_entropy import window_bandwidths


def per_call(fn, repeat):
    fn()
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=300, help="trials for the end-to-end batch")
    parser.add_argument("--repeat", type=int, default=2000, help="calls per kernel timing")
    parser.add_argument("--sensors", type=int, default=10)
    args = parser.parse_args()

    names = _backend.available()
    rng = np.random.default_rng(0)
    lam = np.sort(rng.lognormal(size=args.sensors))[::-1].copy()
    hs = window_bandwidths(lam)
    cfg = ScenarioConfig(args.sensors, args.sensors // 2, 100, snr_db=8.0)

    rows = {}
    for name in names:
        k = _backend.get(name)
        rows[name] = {
            "entropy": per_call(lambda: k.entropy(lam, 0.7), args.repeat),
            "tail_profile": per_call(lambda: k.tail_profile(lam, hs), args.repeat),
            "head_profile": per_call(lambda: k.head_profile(lam, hs), args.repeat),
            "suffix_std": per_call(lambda: k.suffix_std(lam), args.repeat),
            "ic_scan": per_call(lambda: k.ic_scan(lam, 100.0, True), args.repeat),
        }
        saved = _backend.kernels
        _backend.kernels = k
        try:
            t0 = time.perf_counter()
            run_batch(cfg, list(EnumMethod), trials=args.trials, master_seed=1)
            rows[name]["trial (4 methods)"] = (time.perf_counter() - t0) / args.trials
        finally:
            _backend.kernels = saved

    header = f"{'kernel':<20}" + "".join(f"{n + ' [us]':>16}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(f"P = {args.sensors}, N = 100 for the end-to-end trial")
    print(header)
    for key in rows[names[0]]:
        line = f"{key:<20}" + "".join(f"{rows[n][key] * 1e6:>16.2f}" for n in names)
        if len(names) > 1:
            line += f"{rows['python'][key] / rows['cython'][key]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
