"""Empirical large sieve quotients T/(|a|^2 Delta(Q, M, eps)) on a grid.

For each (Q, M) the script records the best random-coefficient ratio, the
exact operator norm B1 where the matrix is small enough, and both quotients
against Delta.  A log-log slope per M-regime shows how the quotient drifts
with Q, which is what decides whether a single constant bounds it.

    python3 scripts/large_sieve_sweep.py --out results/
"""

import argparse
import csv
import math
from pathlib import Path

import numpy as np

from cubica.errors import TooLarge
from cubica.large_sieve import delta_argmin, delta_bound, empirical_ratio, norm_exact

GRID = (50, 100, 200, 400, 800, 1600, 3200)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--exact-max", type=int, default=1600, help="largest Q for exact B1")
    ap.add_argument("--out", default="results")
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for regime, Mof in (("sqrtQ", math.isqrt), ("Q", lambda Q: Q)):
        for Q in GRID:
            M = Mof(Q)
            e = empirical_ratio(Q, M, args.trials, args.seed, args.eps)
            b1 = math.nan
            if Q <= args.exact_max:
                try:
                    b1 = norm_exact("B1", Q, M).value
                except TooLarge:
                    pass
            d = delta_bound(Q, M, args.eps)
            rows.append((regime, Q, M, e.max_ratio, e.quotient, b1, b1 / d, delta_argmin(Q, M)))
            print(f"{regime:6s} Q={Q:5d} M={M:5d}  random {e.quotient:.3e}  exact {b1 / d:.3e}  argmin term {delta_argmin(Q, M)}")

    with (out / "large_sieve_sweep.csv").open("w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["regime", "Q", "M", "max_ratio", "quotient", "B1", "B1_quotient", "delta_argmin"])
        for r in rows:
            wr.writerow([r[0], r[1], r[2], repr(r[3]), repr(r[4]), repr(r[5]), repr(r[6]), r[7]])

    for regime in ("sqrtQ", "Q"):
        sel = [r for r in rows if r[0] == regime]
        Q = np.array([r[1] for r in sel], dtype=float)
        qt = np.array([r[4] for r in sel])
        slope = np.polyfit(np.log(Q), np.log(qt), 1)[0]
        print(f"{regime}: random quotient ~ Q^{slope:.2f}, spread {qt.max() / qt.min():.1f}x")
    allq = [r[4] for r in rows]
    print(f"overall spread of the random quotient: {max(allq) / min(allq):.1f}x")
    ex = [r[6] for r in rows if not math.isnan(r[6])]
    print(f"overall spread of the exact-norm quotient: {max(ex) / min(ex):.1f}x")


if __name__ == "__main__":
    main()
