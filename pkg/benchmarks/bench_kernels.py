"""Time the hot kernels with numba on and off.

Each backend runs in its own interpreter because the switch is read at import
time (``PSBCK_DISABLE_NUMBA=1`` selects the pure-Python path).  Results are
checked for agreement before timings are reported.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--size 4]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from psbck import kernels, fixtures
from psbck._accel import NUMBA_ENABLED

size, repeat = int(sys.argv[1]), int(sys.argv[2])
A = fixtures.load("a6")

def search():
    return int(kernels.search_models(size, False, 10**9)[2])

def maps():
    return int(kernels.candidate_maps(A.arrow, A.squiggle, A.top, 10**9)[1])

def subsets():
    total = 0
    for mask in range(1 << A.n):
        mem = np.array([(mask >> i) & 1 for i in range(A.n)], dtype=bool)
        total += int(kernels.ds_flags(A.arrow, A.squiggle, A.top, mem))
    return total

out = {"numba": NUMBA_ENABLED, "results": {}, "seconds": {}}
for name, fn in (("search", search), ("state-candidates", maps), ("ds-flags", subsets)):
    out["results"][name] = fn()  # warm-up, includes compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["seconds"][name] = best
print(json.dumps(out))
"""


def run(disable: bool, size: int, repeat: int) -> dict:
    env = dict(os.environ, PSBCK_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(size), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=4, help="carrier size for the model search")
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    fast = run(False, args.size, args.repeat)
    pure = run(True, args.size, args.repeat)
    if not fast["numba"]:
        print("numba is not importable; both runs used the pure path")
    if fast["results"] != pure["results"]:
        raise SystemExit(f"backends disagree: {fast['results']} vs {pure['results']}")
    print(f"{'kernel':<18}{'numba s':>12}{'pure s':>12}{'speedup':>10}")
    for name, t_fast in fast["seconds"].items():
        t_pure = pure["seconds"][name]
        print(f"{name:<18}{t_fast:>12.5f}{t_pure:>12.5f}{t_pure / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
