"""Finite lattice point sets and the named families used throughout."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import conv_membership

__all__ = [
    "LatticeSet",
    "NotApplicable",
    "is_lattice_convex",
    "dim_of",
    "ball",
    "is_observer",
    "observers_in_region",
    "parity_candidates",
    "simplex",
    "cross",
    "box",
    "cube",
    "debruijn_set",
    "delta3_certificate",
    "DELTA3_CERTIFICATE",
    "DELTA3_FIXTURE_EDGES",
    "four_facet_sets",
    "unimodular_image",
]


class NotApplicable(ValueError):
    """Raised when a construction's hypothesis does not hold for the input."""


@dataclass(frozen=True)
class LatticeSet:
    dim: int
    points: frozenset

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        pts = frozenset(tuple(int(v) for v in p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have {self.dim} coordinates")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable, dim: int | None = None) -> "LatticeSet":
        pts = [tuple(p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("cannot infer the dimension of an empty set")
            dim = len(pts[0])
        return cls(dim, frozenset(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, p):
        return tuple(p) in self.points

    def sorted(self) -> list:
        return sorted(self.points)

    def union(self, other) -> "LatticeSet":
        other_pts = other.points if isinstance(other, LatticeSet) else frozenset(map(tuple, other))
        return LatticeSet(self.dim, self.points | other_pts)

    def minus(self, other) -> "LatticeSet":
        other_pts = other.points if isinstance(other, LatticeSet) else frozenset(map(tuple, other))
        return LatticeSet(self.dim, self.points - other_pts)

    def bounding_box(self) -> list:
        return [(min(p[i] for p in self.points), max(p[i] for p in self.points))
                for i in range(self.dim)]


def _box_points(bbox):
    return itertools.product(*(range(lo, hi + 1) for lo, hi in bbox))


def is_lattice_convex(X: LatticeSet) -> bool:
    if not X.points:
        raise ValueError("X must be nonempty")
    S = X.sorted()
    for z in _box_points(X.bounding_box()):
        if z not in X.points and conv_membership(z, S):
            return False
    return True


def _rank(rows) -> int:
    M = [[Fraction(v) for v in r] for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def dim_of(X: LatticeSet) -> int:
    """Affine dimension."""
    if not X.points:
        raise ValueError("X must be nonempty")
    pts = X.sorted()
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    return _rank(diffs) if diffs else 0


def ball(X: LatticeSet | int, t: int) -> LatticeSet:
    """``B_t = [-t, t]^d`` intersected with the integer lattice."""
    if t < 1:
        raise ValueError("t must be at least 1")
    d = X.dim if isinstance(X, LatticeSet) else int(X)
    return LatticeSet(d, frozenset(itertools.product(range(-t, t + 1), repeat=d)))


def is_observer(X: LatticeSet, z) -> bool:
    z = tuple(z)
    if z in X.points:
        raise ValueError(f"{z} lies in X")
    U = X.union([z])
    S = U.sorted()
    for w in _box_points(U.bounding_box()):
        # X is lattice-convex, so only new lattice points can spoil convexity
        if w not in U.points and conv_membership(w, S):
            return False
    return True


def observers_in_region(X: LatticeSet, region: LatticeSet) -> LatticeSet:
    found = [z for z in region.sorted() if z not in X.points and is_observer(X, z)]
    return LatticeSet(X.dim, frozenset(found))


def parity_candidates(X: LatticeSet) -> LatticeSet:
    """The set ``2X - X``, a superset of the observers when X hits every parity class."""
    classes = {tuple(v % 2 for v in p) for p in X.points}
    if len(classes) < 2 ** X.dim:
        raise NotApplicable("X misses a residue class mod 2")
    pts = {tuple(2 * a - b for a, b in zip(x, y)) for x in X.points for y in X.points}
    return LatticeSet(X.dim, frozenset(pts))


def _unit(d, i, s=1):
    return tuple(s if j == i else 0 for j in range(d))


def simplex(d: int) -> LatticeSet:
    return LatticeSet(d, frozenset([(0,) * d] + [_unit(d, i) for i in range(d)]))


def cross(d: int) -> LatticeSet:
    pts = [(0,) * d] + [_unit(d, i, s) for i in range(d) for s in (1, -1)]
    return LatticeSet(d, frozenset(pts))


def box(segments) -> LatticeSet:
    segments = [(int(a), int(b)) for a, b in segments]
    for a, b in segments:
        if a > b:
            raise ValueError(f"empty segment {a}..{b}")
    return LatticeSet(len(segments), frozenset(_box_points(segments)))


def cube(d: int) -> LatticeSet:
    return box([(0, 1)] * d)


def debruijn_set(d: int) -> LatticeSet:
    """Points ``e_j - e_k + e_l`` for ``j < k < l``."""
    if d < 3:
        raise ValueError("d must be at least 3")
    pts = []
    for j, k, l in itertools.combinations(range(d), 3):
        v = [0] * d
        v[j], v[k], v[l] = 1, -1, 1
        pts.append(tuple(v))
    return LatticeSet(d, frozenset(pts))


DELTA3_CERTIFICATE = (
    (0, 1, 1), (1, 0, 1), (0, 2, 0), (1, 1, -1), (1, 1, -2), (0, 0, -1),
    (-1, 0, 1), (-1, 0, 0), (2, 0, 0), (0, 0, 2), (2, 0, -1), (-1, 0, 2),
    (0, -1, 1), (0, -1, 0), (1, 1, 1), (-1, 1, 0), (1, 1, 0), (0, 2, -1),
    (0, -1, 2), (-2, 1, 1), (-1, 1, 1), (2, -1, 0), (-1, 2, 0), (1, 0, -1),
    (1, -1, 0), (1, -1, 1), (1, -2, 1), (0, 1, -1),
)


# triangle-free 54-edge subgraph of the hiding graph on the points above (by ID)
DELTA3_FIXTURE_EDGES = (
    (0, 5), (0, 13), (0, 23), (0, 24), (1, 5), (1, 7), (1, 15), (1, 23),
    (1, 27), (2, 12), (2, 24), (2, 26), (3, 6), (3, 11), (3, 12), (3, 18),
    (3, 20), (3, 25), (4, 9), (4, 11), (4, 18), (5, 14), (6, 8), (6, 10),
    (6, 16), (7, 14), (7, 16), (8, 15), (8, 19), (9, 23), (9, 27), (10, 19),
    (10, 20), (11, 23), (12, 16), (12, 17), (13, 14), (13, 16), (15, 16), (15, 21),
    (15, 25), (16, 24), (17, 25), (17, 26), (18, 27), (19, 21), (20, 21), (20, 23),
    (20, 24), (21, 22), (22, 24), (22, 25), (22, 26), (25, 27),
)


def delta3_certificate() -> list:
    """The 28 points certifying four facets for the 3-simplex, in ID order 0..27."""
    return list(DELTA3_CERTIFICATE)


# columns of the four 3-dimensional sets with rcl = rc = 4
_FOUR_FACET_COLUMNS = (
    ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 1)),
    ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 1), (-1, 1, 0)),
    ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 1), (0, -1, 1)),
)


def four_facet_sets() -> list:
    return [LatticeSet.of(cols) for cols in _FOUR_FACET_COLUMNS]


def unimodular_image(X: LatticeSet, U, t=None) -> LatticeSet:
    t = t or (0,) * X.dim
    pts = [tuple(sum(U[i][j] * p[j] for j in range(X.dim)) + t[i] for i in range(X.dim))
           for p in X.points]
    return LatticeSet(X.dim, frozenset(pts))
