"""Rediscover both asymptotic constants: the two-point scans, then k-atom searches for k = 2..max_k.

Usage: python3 scripts/extremal_search.py --max-k 5 --restarts 16 --seed 7
"""

import argparse
import math
import time

from clt_lab.extremal import search_k_atoms, two_point_scan

SQRT_2_OVER_PI = math.sqrt(2 / math.pi)
C_INF_BE = (math.sqrt(10) + 3) / (6 * math.sqrt(2 * math.pi))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    for kind, target in (("interval", SQRT_2_OVER_PI), ("kolmogorov", C_INF_BE)):
        r = two_point_scan(kind)
        print(f"two-point {kind:10s} value {r.objective_value:.12f} (target {target:.12f})  t* {r.t_star:.10f}")

    print(f"\n{'k':>2} {'mode':>14} {'objective':>10} {'value':>16} {'atoms kept':>10} {'sec':>6}")
    for k in range(2, args.max_k + 1):
        for mode, kind in (("lattice", "interval"), ("lattice", "kolmogorov"), ("continuous_h0", "interval")):
            t0 = time.perf_counter()
            r = search_k_atoms(k, mode, kind, restarts=args.restarts, seed=args.seed)
            print(f"{k:2d} {mode:>14} {kind:>10} {r.objective_value:16.12f} {len(r.best_law):10d} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
