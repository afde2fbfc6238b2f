"""Independent floating point oracles used only by the tests."""
import itertools

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

TOL = 1e-7


def lp_separable(inner, outer) -> bool:
    """Is there (a, b) with a.x <= b on ``inner`` and a.y >= b + 1 on ``outer``?"""
    inner = np.asarray(inner, dtype=float)
    outer = np.asarray(outer, dtype=float)
    d = inner.shape[1]
    # variables a (d, free) and b (free); a.x - b <= 0, -a.y + b <= -1
    A = np.vstack([np.hstack([inner, -np.ones((len(inner), 1))]),
                   np.hstack([-outer, np.ones((len(outer), 1))])])
    r = np.concatenate([np.zeros(len(inner)), -np.ones(len(outer))])
    res = linprog(np.zeros(d + 1), A_ub=A, b_ub=r, bounds=[(None, None)] * (d + 1), method="highs")
    return res.status == 0


def in_hull(q, pts) -> bool:
    pts = np.asarray(pts, dtype=float)
    n = len(pts)
    A = np.vstack([pts.T, np.ones((1, n))])
    b = np.concatenate([np.asarray(q, dtype=float), [1.0]])
    res = linprog(np.zeros(n), A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
    return res.status == 0


def segment_meets_hull(p, q, pts) -> bool:
    pts = np.asarray(pts, dtype=float)
    p, q = np.asarray(p, float), np.asarray(q, float)
    n = len(pts)
    # sum l_i x_i = (1 - s) p + s q, sum l = 1, l >= 0, 0 <= s <= 1
    A = np.vstack([np.hstack([pts.T, (p - q)[:, None]]), np.hstack([np.ones(n), [0.0]])])
    b = np.concatenate([p, [1.0]])
    res = linprog(np.zeros(n + 1), A_eq=A, b_eq=b, bounds=[(0, None)] * n + [(0, 1)], method="highs")
    return res.status == 0


def brute_rc(inner, outer) -> int:
    """Least number of separable blocks covering ``outer`` (exhaustive, small inputs)."""
    outer = list(outer)
    m = len(outer)
    if m == 0:
        return 0
    sep = [False] * (1 << m)
    sep[0] = True
    for mask in range(1, 1 << m):
        pts = [outer[i] for i in range(m) if mask >> i & 1]
        # subsets of non-separable sets can be separable, supersets cannot
        sub_bad = any(not sep[mask & ~(1 << i)] for i in range(m) if mask >> i & 1)
        sep[mask] = False if sub_bad else lp_separable(inner, pts)
    full = (1 << m) - 1
    INF = m + 1
    best = [INF] * (1 << m)
    best[0] = 0
    for mask in range(1, full + 1):
        low = mask & -mask
        sub = mask
        while sub:
            if sub & low and sep[sub]:
                best[mask] = min(best[mask], best[mask ^ sub] + 1)
            sub = (sub - 1) & mask
    return best[full]


def hull_vertices_2d(pts) -> set:
    pts = np.asarray(sorted(set(map(tuple, pts))), dtype=float)
    h = ConvexHull(pts)
    return {tuple(int(v) for v in pts[i]) for i in h.vertices}


def lattice_hull_points(verts, box) -> set:
    """Lattice points of conv(verts) inside ``box`` (list of (lo, hi))."""
    return {z for z in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
            if in_hull(z, verts)}


def brute_chromatic(n, edges) -> int:
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for col in itertools.product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return n
