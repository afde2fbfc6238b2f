"""Check the explicit crosspolytope relaxations and their lifts."""
import argparse
import time

from relaxcomp.formats import write_hpoly
from relaxcomp.lattice import cross
from relaxcomp.relaxations import cross_lift, cross_relaxation, verify_relaxation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=6)
    ap.add_argument("--show", action="store_true", help="print the systems")
    args = ap.parse_args()

    for start in (3, 4):
        Q = cross_relaxation(start)
        for d in range(start, args.dmax + 1):
            if d > start:
                Q = cross_lift(Q, check=False)
            t0 = time.perf_counter()
            ok = verify_relaxation(Q, cross(d))
            print(f"from d={start}: d={d} rows={len(Q.rows)} verified={bool(ok)} "
                  f"({time.perf_counter() - t0:.2f}s)")
            if args.show:
                print(write_hpoly(Q))


if __name__ == "__main__":
    main()
