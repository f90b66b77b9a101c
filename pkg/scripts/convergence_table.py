"""sqrt(n)-scaled Kolmogorov and interval distances for a law along n = 4^k, with the residual of the one-term expansion.

Usage: python3 scripts/convergence_table.py laws/bernoulli03.law --max-n 4096
"""

import argparse
import math
import time
from pathlib import Path

from clt_lab.asymptotics import expansion_residual_sup, interval_limit, kolmogorov_limit
from clt_lab.cli import load_law
from clt_lab.convolution import standardized_sum
from clt_lab.deviation import distances


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("law", type=Path)
    ap.add_argument("--max-n", type=int, default=4096)
    args = ap.parse_args()

    law = load_law(args.law)
    lim_k = kolmogorov_limit(law)
    rep = interval_limit(law)
    print(f"limits: kolmogorov {lim_k:.10f}  interval {rep.value:.10f} ({rep.branch.value})")
    print(f"{'n':>6} {'sqrtn*d_kolm':>14} {'sqrtn*d_int':>14} {'gap_int':>10} {'sqrtn*resid':>12} {'sec':>6}")
    n = 4
    while n <= args.max_n:
        t0 = time.perf_counter()
        d_k, d_i = distances(standardized_sum(law, n))
        res = expansion_residual_sup(law, n)
        r = math.sqrt(n)
        print(
            f"{n:6d} {r * d_k:14.8f} {r * d_i:14.8f} {abs(r * d_i - rep.value):10.2e} "
            f"{r * res:12.6f} {time.perf_counter() - t0:6.2f}"
        )
        n *= 4


if __name__ == "__main__":
    main()
