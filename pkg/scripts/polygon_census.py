"""Random lattice polygons: how often does rc exceed the largest hiding set?"""
import argparse
import collections
import random
import time

from relaxcomp.bounds import hiding_graph, max_clique
from relaxcomp.rc2d import hull_hrep_2d, observers_2d, polygon_lattice_points, rc_2d


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=300, help="number of polygons")
    ap.add_argument("--size", type=int, default=8, help="points drawn from [0, size]^2")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    seen = set()
    hist = collections.Counter()
    by_rc = collections.Counter()
    t0 = time.perf_counter()
    while len(seen) < args.n:
        pts = [(rng.randint(0, args.size), rng.randint(0, args.size)) for _ in range(rng.randint(3, 9))]
        try:
            P = hull_hrep_2d(pts)
        except ValueError:
            continue
        X = polygon_lattice_points(P)
        if X.points in seen:
            continue
        seen.add(X.points)
        k = rc_2d(pts)[0]
        H = max_clique(hiding_graph(X, observers_2d(pts).points))[0]
        hist[k - H] += 1
        by_rc[k] += 1
    print(f"{len(seen)} distinct polygons in {time.perf_counter() - t0:.1f}s")
    print("rc - H:", dict(sorted(hist.items())))
    print("rc:    ", dict(sorted(by_rc.items())))


if __name__ == "__main__":
    main()
