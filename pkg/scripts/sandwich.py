"""Tabulate rc(X, B_t) and rc_eps(X) over the certificate region for small planar sets."""
import argparse
import time
from fractions import Fraction

from relaxcomp.formats import fmt_rat
from relaxcomp.lattice import ball, cross, cube, simplex
from relaxcomp.separation import eps_region, rc_eps, rc_finite

SETS = {"square": cube(2), "simplex": simplex(2), "cross": cross(2)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", nargs="+", default=["1", "1/2", "1/4"])
    ap.add_argument("--t", nargs="+", type=int, default=[1, 2])
    args = ap.parse_args()

    for name, X in SETS.items():
        row = [f"B{t}={rc_finite(X, ball(X, t))[0]}" for t in args.t]
        for s in args.eps:
            e = Fraction(s)
            t0 = time.perf_counter()
            reg = eps_region(X, e)
            k = rc_eps(X, e, reg.certificate_set)[0]
            row.append(f"eps={fmt_rat(e)}:{k} (c={fmt_rat(reg.constant)}, |Y|={len(reg.certificate_set)}, "
                       f"{time.perf_counter() - t0:.1f}s)")
        print(name, " ".join(row))


if __name__ == "__main__":
    main()
