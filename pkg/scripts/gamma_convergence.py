"""Non-lattice check: standardized sums of unit exponentials against the h = 0 limits.

Usage: python3 scripts/gamma_convergence.py
"""

import math
import time

from clt_lab.asymptotics import interval_limit_params, kolmogorov_limit_params
from clt_lab.gamma_family import EXP_ALPHA, EXP_SIGMA, smooth_deviation_extrema


def main():
    lim_i = interval_limit_params(0.0, EXP_SIGMA, EXP_ALPHA)
    lim_k = kolmogorov_limit_params(0.0, EXP_SIGMA, EXP_ALPHA)
    print(f"limits: kolmogorov {lim_k:.10f}  interval {lim_i.value:.10f}  y0 {lim_i.y0:.6f}")
    print(f"{'n':>6} {'sqrtn*d_kolm':>14} {'sqrtn*d_int':>14} {'x_sup':>9} {'x_inf':>9} {'sec':>6}")
    for n in (1, 4, 16, 64, 256, 1024, 4096):
        t0 = time.perf_counter()
        ext = smooth_deviation_extrema(n)
        r = math.sqrt(n)
        print(
            f"{n:6d} {r * max(ext.sup_dev, -ext.inf_dev):14.8f} {r * (ext.sup_dev - ext.inf_dev):14.8f} "
            f"{ext.x_sup:9.4f} {ext.x_inf:9.4f} {time.perf_counter() - t0:6.2f}"
        )


if __name__ == "__main__":
    main()
