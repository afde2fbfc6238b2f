"""Acceptance criteria 1-11; each test records one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; the
summary lines are printed at the end of the session either way.
"""
import math
import random
import sys
from fractions import Fraction

import pytest

from relaxcomp.bounds import SearchLimitExceeded, chromatic_number, hiding_graph, max_clique
from relaxcomp.lattice import (DELTA3_FIXTURE_EDGES, ball, box, cross, cube, debruijn_set,
                               delta3_certificate, four_facet_sets, observers_in_region, parity_candidates,
                               simplex)
from relaxcomp.rc2d import hull_hrep_2d, maximal_arcs, min_circular_cover, observers_2d, \
    polygon_lattice_points, rc_2d
from relaxcomp.relaxations import (RC_CROSS_CITED, box_rc, box_simplex, cross_lift, cross_relaxation,
                                   iterative_rc, verify_relaxation)
from relaxcomp.separation import rc_eps_full, rc_finite

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_01_delta3_certificate():
    G = hiding_graph(simplex(3), delta3_certificate(), keep_order=True)
    H = G.subgraph(DELTA3_FIXTURE_EDGES)
    edges = len(H.edges())
    clique = max_clique(H)[0]
    chi = chromatic_number(H)[0]
    drops = [chromatic_number(H.without_edge(u, v))[0] for u, v in H.edges()]
    k, cert = rc_finite(simplex(3), delta3_certificate())
    ok = edges == 54 and clique == 2 and chi == 4 and all(c == 3 for c in drops) and k == 4
    record(1, ok, f"edges={edges} clique={clique} chi={chi} "
                  f"deletions->3: {sum(c == 3 for c in drops)}/{len(drops)} rc_finite={k}")


def test_criterion_02_crosspolytope_relaxations():
    v3 = verify_relaxation(cross_relaxation(3), cross(3))
    v4 = verify_relaxation(cross_relaxation(4), cross(4))
    rows = (len(cross_relaxation(3).rows), len(cross_relaxation(4).rows))
    X = cross(3)
    G = hiding_graph(X, ball(X, 2))
    try:
        chi = chromatic_number(G, node_limit=2_000_000)[0]
        chi_note = f"chi(G(cross3, B2))={chi}"
        chi_ok = chi >= 4
    except SearchLimitExceeded:
        chi_note = f"chi(G(cross3, B2)) not settled, clique={max_clique(G)[0]}"
        chi_ok = True
    # rows = d + 1 upper bound; the matching lower bound is recorded as cited, not re-derived
    ok = bool(v3) and bool(v4) and rows == (4, 5) and chi_ok
    record(2, ok, f"verified={bool(v3)},{bool(v4)} rows={rows} "
                  f"rc(cross3)={RC_CROSS_CITED[3]} rc(cross4)={RC_CROSS_CITED[4]} (lower bound cited, not re-derived); "
                  f"{chi_note}")


def test_criterion_03_crosspolytope_lift():
    Q4 = cross_lift(cross_relaxation(3))
    Q5 = cross_lift(Q4)
    v4 = verify_relaxation(Q4, cross(4))
    v5 = verify_relaxation(Q5, cross(5))
    ok = len(Q4.rows) == 6 and bool(v4) and len(Q5.rows) == 8 and bool(v5)
    record(3, ok, f"cross4: {len(Q4.rows)} rows verified={bool(v4)}; cross5: {len(Q5.rows)} rows verified={bool(v5)}")


def test_criterion_04_box_formula():
    cases = [((1, 0), [(0, 2)]), ((1, 1), [(0, 2), (0, 1)]), ((2, 0), [(0, 2), (0, 2)])]
    parts, ok = [], True
    for (k, l), segs in cases:
        X = box(segs)
        obs = observers_in_region(X, parity_candidates(X))
        rc = rc_finite(X, obs)[0]
        good = rc == box_rc(k, l)
        note = f"(k,l)=({k},{l}) rc={rc}"
        if X.dim == 2:
            r2 = rc_2d(X.sorted())[0]
            good = good and r2 == rc
            note += f" rc_2d={r2}"
        ok = ok and good
        parts.append(note)
    record(4, ok, "; ".join(parts))


def test_criterion_05_box_simplex():
    bad = [(l, b) for l in (0, 1, 2) for b in (2, 3, 5)
           if not verify_relaxation(box_simplex(l, b), box([(0, 1)] * l + [(0, b)]))]
    record(5, not bad, f"9 cases, failures={bad}")


PENTAGON = [(2, 1), (4, 1), (4, 2), (3, 3), (1, 2)]


def test_criterion_06_planar_pipeline():
    cyc = observers_2d(PENTAGON)
    arcs = maximal_arcs(PENTAGON, cyc)
    cover, _ = min_circular_cover(arcs, len(cyc))
    sq = rc_2d(cube(2).sorted())[0]
    ok = len(cyc) == 10 and len(arcs) == 6 and cover == 3 and sq == 3
    record(6, ok, f"observers={len(cyc)} arcs={len(arcs)} cover={cover} rc_2d(square)={sq}")


def test_criterion_07_hiding_sandwich_random_polygons():
    rng = random.Random(20240601)
    n = checked = 0
    failures = []
    while n < 200:
        pts = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(rng.randint(3, 8))]
        try:
            hull = hull_hrep_2d(pts)
        except ValueError:
            continue
        n += 1
        X = polygon_lattice_points(hull)
        cyc = observers_2d(pts)
        k = rc_2d(pts)[0]
        k_oracle = rc_finite(X, cyc.points, check=False)[0]
        # a largest hiding set can be taken among the observers
        H = max_clique(hiding_graph(X, cyc.points))[0]
        if not (H <= k <= H + 1 and k == k_oracle):
            failures.append((tuple(pts), H, k, k_oracle))
        checked += 1
    record(7, not failures, f"{checked} polygons, failures={failures[:3]}")


def test_criterion_08_sandwich():
    eps_values = (Fraction(1), Fraction(1, 2), Fraction(1, 4))
    ok, parts = True, []
    for name, X in (("square", cube(2)), ("simplex", simplex(2)), ("cross", cross(2))):
        eps_rc = [rc_eps_full(X, e)[0] for e in eps_values]
        fin = [rc_finite(X, ball(X, t))[0] for t in (1, 2)]
        chain = all(f <= r for f in fin for r in eps_rc)
        mono = all(a >= b for a, b in zip(eps_rc, eps_rc[1:]))
        ok = ok and chain and mono
        parts.append(f"{name}: B1,B2={fin} eps 1,1/2,1/4={eps_rc}")
    record(8, ok, "; ".join(parts))


def test_criterion_09_delta4_no_finite_certificate():
    X = simplex(4)
    k1 = rc_finite(X, ball(X, 1))[0]
    res = iterative_rc(X, ball(X, 1), 2, 3)
    bad = res.converged and res.k <= 4
    ok = k1 <= 4 and not bad
    record(9, ok, f"rc(simplex4, B1)={k1}; iterate(3 rounds): "
                  f"{'converged' if res.converged else 'bound only'} k={res.k}")


def test_criterion_10_debruijn():
    vals = {d: rc_finite(simplex(d), debruijn_set(d))[0] for d in (5, 6, 7, 8)}
    bound = math.ceil(math.log2(math.log2(8)))
    ok = all(v >= bound for v in vals.values()) and bound == 2
    record(10, ok, f"values={vals} bound={bound}")


def test_criterion_11_four_facet_sets():
    vals = [rc_finite(X, ball(X, 2))[0] for X in four_facet_sets()]
    record(11, vals == [4, 4, 4, 4], f"rc(X, B2)={vals}")


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(RESULTS[n] for n in sorted(RESULTS)))
    sys.exit(code)
