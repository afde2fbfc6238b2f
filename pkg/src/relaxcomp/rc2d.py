"""Relaxation complexity of planar lattice-convex sets.

Pipeline: Graham scan -> primitive edge normals -> move every edge out by
one lattice layer -> integer points on the boundary of the moved-out polygon
(these are exactly the observers, in convex position) -> maximal separable
arcs of observers -> minimum circular arc cover.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import Inequality
from .lattice import LatticeSet, dim_of
from .separation import SeparationCertificate, separable

__all__ = [
    "PolygonHRep",
    "ObserverCycle",
    "Arc",
    "graham_scan",
    "hull_hrep_2d",
    "move_out",
    "polygon_vertices",
    "polygon_lattice_points",
    "observers_2d",
    "chord_misses",
    "maximal_arcs",
    "min_circular_cover",
    "rc_2d",
    "PlanarResult",
]


@dataclass(frozen=True)
class PolygonHRep:
    """Rows ``(a, b, c)`` meaning ``a x1 + b x2 <= c``, normals counterclockwise."""

    rows: tuple

    def __len__(self):
        return len(self.rows)

    def contains(self, p) -> bool:
        return all(a * p[0] + b * p[1] <= c for a, b, c in self.rows)

    def inequalities(self) -> list:
        return [Inequality((a, b), c) for a, b, c in self.rows]


@dataclass(frozen=True)
class ObserverCycle:
    points: tuple

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Arc:
    start: int
    length: int  # the arc holds length + 1 consecutive observers

    def indices(self, n: int) -> list:
        return [(self.start + i) % n for i in range(self.length + 1)]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def graham_scan(points) -> list:
    """Hull vertices in counterclockwise order, starting at the lowest point.

    Points on the relative interior of edges are dropped.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 3:
        return pts
    pivot = min(pts, key=lambda p: (p[1], p[0]))

    def cmp(p, q):
        c = _cross(pivot, p, q)
        if c > 0:
            return -1
        if c < 0:
            return 1
        dp = (p[0] - pivot[0]) ** 2 + (p[1] - pivot[1]) ** 2
        dq = (q[0] - pivot[0]) ** 2 + (q[1] - pivot[1]) ** 2
        return (dp > dq) - (dp < dq)

    rest = sorted((p for p in pts if p != pivot), key=functools.cmp_to_key(cmp))
    stack = [pivot]
    for p in rest:
        while len(stack) > 1 and _cross(stack[-2], stack[-1], p) <= 0:
            stack.pop()
        stack.append(p)
    return stack


def _as_points(V):
    return V.sorted() if isinstance(V, LatticeSet) else [tuple(p) for p in V]


def hull_hrep_2d(V) -> PolygonHRep:
    pts = _as_points(V)
    if not pts or len(pts[0]) != 2:
        raise ValueError("expected points in the plane")
    if dim_of(LatticeSet.of(pts)) < 2:
        raise ValueError("point set is not two-dimensional")
    verts = graham_scan(pts)
    rows = []
    for i, v in enumerate(verts):
        w = verts[(i + 1) % len(verts)]
        e1, e2 = w[0] - v[0], w[1] - v[1]
        g = math.gcd(e1, e2)
        a, b = e2 // g, -e1 // g
        rows.append((a, b, a * v[0] + b * v[1]))
    return PolygonHRep(tuple(rows))


def _line_interval(rows, i):
    """Parameter interval of row ``i``'s boundary line inside all other rows.

    The line is ``p0 + t * (-b, a)`` with ``p0`` an integer point; returns
    ``(p0, lo, hi)`` with Fractions (``lo > hi`` means empty).
    """
    a, b, c = rows[i]
    g, x0, y0 = _ext_gcd(a, b)
    p0 = (x0 * c, y0 * c)
    direction = (-b, a)
    lo, hi = None, None
    for j, (aj, bj, cj) in enumerate(rows):
        if j == i:
            continue
        slope = aj * direction[0] + bj * direction[1]
        val = cj - (aj * p0[0] + bj * p0[1])
        if slope == 0:
            if val < 0:
                return p0, Fraction(1), Fraction(0)
            continue
        bound = Fraction(val, slope)
        if slope > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is None or hi is None:
        raise ValueError("polygon is unbounded")
    return p0, lo, hi


def _ext_gcd(a, b):
    """``(g, x, y)`` with ``a x + b y = g = 1`` for coprime ``a, b``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    if old_r != 1:
        raise ValueError("edge normal is not primitive")
    return old_r, old_s, old_t


def _irredundant(rows):
    keep = []
    for i, r in enumerate(rows):
        _, lo, hi = _line_interval(rows, i)
        # a row touching the polygon in a single point is redundant
        if lo < hi:
            keep.append(r)
    return tuple(keep)


def move_out(P: PolygonHRep) -> PolygonHRep:
    """Push every edge out by one lattice layer and drop redundant rows."""
    shifted = tuple((a, b, c + 1) for a, b, c in P.rows)
    return PolygonHRep(_irredundant(shifted))


def polygon_vertices(P: PolygonHRep) -> list:
    """Vertices ``w_j`` (end of edge j) in counterclockwise order, as Fractions."""
    out = []
    for i, (a, b, c) in enumerate(P.rows):
        p0, lo, hi = _line_interval(P.rows, i)
        out.append((p0[0] - b * hi, p0[1] + a * hi))
    return out


def polygon_lattice_points(P: PolygonHRep) -> LatticeSet:
    verts = polygon_vertices(P)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    pts = [(x, y) for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1)
           for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1)
           if P.contains((x, y))]
    return LatticeSet(2, frozenset(pts))


def observers_2d(V) -> ObserverCycle:
    """Integer points on the boundary of the moved-out hull, counterclockwise."""
    outer = move_out(hull_hrep_2d(V))
    pts = []
    for i, (a, b, _) in enumerate(outer.rows):
        p0, lo, hi = _line_interval(outer.rows, i)
        for t in range(math.ceil(lo), math.floor(hi) + 1):
            p = (p0[0] - b * t, p0[1] + a * t)
            if not pts or pts[-1] != p:
                pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    s = pts.index(min(pts))
    return ObserverCycle(tuple(pts[s:] + pts[:s]))


def chord_misses(P: PolygonHRep, p, q) -> bool:
    """True iff the segment ``[p, q]`` avoids the polygon ``P``."""
    lo, hi = Fraction(0), Fraction(1)
    for a, b, c in P.rows:
        base = a * p[0] + b * p[1]
        slope = a * (q[0] - p[0]) + b * (q[1] - p[1])
        if slope == 0:
            if base > c:
                return True
            continue
        t = Fraction(c - base, slope)
        if slope > 0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        if lo > hi:
            return True
    return False


def maximal_arcs(X, cycle: ObserverCycle, verify: bool = False) -> list:
    """Inclusion-maximal arcs of observers whose end chord misses conv(X).

    With ``verify`` every arc is re-checked by the LP separation oracle, and
    so is the failure of its one-step extension.
    """
    P = hull_hrep_2d(X)
    ys = cycle.points
    n = len(ys)
    longest = []
    for r in range(n):
        s = 0
        while s + 1 < n and chord_misses(P, ys[r], ys[(r + s + 1) % n]):
            s += 1
        if s + 1 >= n:
            raise AssertionError("an arc covers every observer; X cannot be full-dimensional")
        longest.append(Arc(r, s))
    sets = [frozenset(a.indices(n)) for a in longest]
    keep = []
    for i, a in enumerate(longest):
        dominated = any(
            (sets[i] < sets[j]) or (sets[i] == sets[j] and j < i)
            for j in range(n) if j != i)
        if not dominated:
            keep.append(a)
    if verify:
        inner = _as_points(X)
        for a in keep:
            pts = [ys[i] for i in a.indices(n)]
            if separable(inner, pts) is None:
                raise AssertionError(f"chord test accepted a non-separable arc {a}")
            if separable(inner, pts + [ys[(a.start + a.length + 1) % n]]) is not None:
                raise AssertionError(f"arc {a} is not maximal")
    return keep


def min_circular_cover(arcs, n: int):
    """Fewest arcs covering all ``n`` cyclic positions; ``(k, chosen)``.

    Tries every arc as the first one and extends greedily; this is exact.
    """
    if n == 0:
        return 0, []
    best = None
    for first in arcs:
        if first.length + 1 >= n:
            return 1, [first]
        chosen = [first]
        reach = first.length + 1
        while reach < n:
            cand = None
            for a in arcs:
                off = (a.start - first.start) % n
                if off <= reach:
                    end = off + a.length + 1
                    if cand is None or end > cand[0]:
                        cand = (end, a)
            if cand is None or cand[0] <= reach:
                chosen = None
                break
            reach = cand[0]
            chosen.append(cand[1])
        if chosen is not None and (best is None or len(chosen) < len(best)):
            best = chosen
    if best is None:
        raise ValueError("arcs do not cover the cycle")
    return len(best), best


@dataclass
class PlanarResult:
    k: int
    X: LatticeSet
    observers: ObserverCycle
    arcs: list
    cover: list
    certificate: SeparationCertificate


def rc_2d(V, details: bool = False):
    """``rc(conv(V) ∩ Z^2)``; returns ``(k, certificate)`` or a :class:`PlanarResult`."""
    hull = hull_hrep_2d(V)
    X = polygon_lattice_points(hull)
    cycle = observers_2d(V)
    arcs = maximal_arcs(V, cycle)
    n = len(cycle)
    k, cover = min_circular_cover(arcs, n)
    inner = X.sorted()
    ineqs, assignment = [], {}
    for idx, arc in enumerate(cover):
        pts = [cycle.points[i] for i in arc.indices(n)]
        w = separable(inner, pts)
        if w is None:
            raise AssertionError(f"arc {arc} is not separable")
        ineqs.append(w.normalized())
        for p in pts:
            assignment.setdefault(p, idx)
    cert = SeparationCertificate(ineqs, assignment)
    if details:
        return PlanarResult(k, X, cycle, arcs, cover, cert)
    return k, cert
