"""Exact computation of rc(X, Y) and its epsilon-robust variant.

``rc(X, Y)`` is the least number of inequalities valid for X such that every
point of ``Y \\ X`` violates at least one of them.  Because a subset of a
separable set is separable, this equals the least number of blocks in a
partition of ``Y \\ X`` into sets that can each be cut off by one hyperplane.

The solver is an exact branch and bound over such partitions:

* fail-first branching: the unassigned outer point with the fewest blocks it
  may still join is placed next (DSATUR order);
* a new block is one symmetric option, so block labels are never permuted;
* incumbent from a greedy pass, lower bound from a maximum clique of hiding
  pairs (optionally the chromatic number of the hiding graph);
* for large ``Y`` the search runs on a growing core of outer points; a core
  solution is extended to all of ``Y`` and any point that cannot be absorbed
  joins the core.  Since rc(X, core) <= rc(X, Y) the final answer is exact.
"""
from __future__ import annotations

import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import HidingGraph, chromatic_number, max_clique
from .exact import (
    Inequality,
    as_rat,
    extreme_points,
    lp_feasible,
    LinearConstraint,
    rat_point,
    separating_inequality,
)
from .lattice import LatticeSet, dim_of, is_lattice_convex

log = logging.getLogger(__name__)

__all__ = [
    "SeparationCertificate",
    "SeparationOracle",
    "EpsRegion",
    "separable",
    "maximal_separable",
    "rc_finite",
    "rc_eps",
    "eps_region",
    "eps_constant",
    "rc_eps_full",
    "eps_inner",
    "solve_separation",
]


@dataclass
class SeparationCertificate:
    inequalities: list
    assignment: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.inequalities)

    def check(self, inner, outer) -> None:
        """Raise AssertionError unless the certificate separates ``inner`` from ``outer``."""
        for x in inner:
            for i, ineq in enumerate(self.inequalities):
                if not ineq.contains(x):
                    raise AssertionError(f"inner point {x} violates inequality {i}")
        for y in outer:
            y = tuple(y)
            if y not in self.assignment:
                raise AssertionError(f"outer point {y} is not assigned")
            i = self.assignment[y]
            if not self.inequalities[i].violated_by(y):
                raise AssertionError(f"outer point {y} satisfies its inequality {i}")

    def is_valid(self, inner, outer) -> bool:
        try:
            self.check(inner, outer)
        except AssertionError:
            return False
        return True


class SeparationOracle:
    """Single-hyperplane separability against a fixed inner set, with a shared cache."""

    def __init__(self, inner: Sequence):
        if not inner:
            raise ValueError("inner set must be nonempty")
        # only the vertices of conv(inner) constrain a separating hyperplane
        self.inner = extreme_points(inner)
        self.dim = len(self.inner[0])
        self._cache: dict = {}
        self._lock = threading.Lock()
        self.lp_calls = 0

    def separate(self, pts) -> Optional[Inequality]:
        key = frozenset(tuple(p) for p in pts)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        self.lp_calls += 1
        res = separating_inequality(self.inner, sorted(key))
        with self._lock:
            self._cache[key] = res
        return res

    def extend(self, members: Sequence, witness: Inequality, y) -> Optional[Inequality]:
        """Separator for ``members + [y]`` given a separator of ``members``.

        Uses row generation so that large blocks never enter one LP whole.
        """
        if witness.violated_by(y):
            return witness
        if len(members) <= 24:
            return self.separate(list(members) + [y])
        active = [y] + list(members[:8]) + list(members[-8:])
        while True:
            self.lp_calls += 1
            w = separating_inequality(self.inner, active)
            if w is None:
                return None
            missed = [m for m in members if not w.violated_by(m)]
            if not missed:
                return w
            active.extend(missed[:16])


def separable(inner: Sequence, I: Sequence) -> Optional[Inequality]:
    """An inequality valid on ``inner`` with ``a.y >= b + 1`` on I, or None."""
    if not I:
        raise ValueError("I must be nonempty")
    return separating_inequality([rat_point(p) for p in inner], [rat_point(p) for p in I])


def maximal_separable(inner: Sequence, universe: Sequence, seed: Sequence) -> list:
    """Greedily grow ``seed`` (lexicographic order) to a maximal separable subset of ``universe``."""
    current = [tuple(p) for p in seed]
    if not current:
        raise ValueError("seed must be nonempty")
    oracle = SeparationOracle(inner)
    w = oracle.separate(current)
    if w is None:
        raise ValueError("seed is not separable from inner")
    for p in sorted(tuple(q) for q in universe):
        if p in current:
            continue
        w2 = oracle.extend(current, w, p)
        if w2 is not None:
            current.append(p)
            w = w2
    return sorted(current)


# ---------------------------------------------------------------------------
# exact partition search


class _PartitionSearch:
    """Partition ``points`` into at most ``k`` separable blocks, exhaustively."""

    def __init__(self, oracle: SeparationOracle, points: list, conflicts: list,
                 node_limit: Optional[int] = None):
        self.oracle = oracle
        self.points = points
        self.conflicts = conflicts  # list of sets of indices (hiding pairs)
        self.single = [oracle.separate([p]) for p in points]
        self.node_limit = node_limit
        self.nodes = 0

    def _sep(self, idxs):
        return self.oracle.separate([self.points[i] for i in idxs])

    def greedy(self):
        blocks, wits = [], []
        order = sorted(range(len(self.points)),
                       key=lambda i: (-len(self.conflicts[i]), i))
        for i in order:
            for b, members in enumerate(blocks):
                if self.conflicts[i] & set(members):
                    continue
                w = wits[b] if wits[b].violated_by(self.points[i]) else self._sep(members + [i])
                if w is not None:
                    members.append(i)
                    wits[b] = w
                    break
            else:
                blocks.append([i])
                wits.append(self.single[i])
        return blocks, wits

    def solve(self, k: int):
        n = len(self.points)
        if n == 0:
            return [], []
        if k <= 0:
            return None
        pts = self.points
        blocks: list = []
        wits: list = []
        options = [set() for _ in range(n)]
        unassigned = set(range(n))

        def feasible_join(b, z):
            if self.conflicts[z] & set(blocks[b]):
                return False
            if wits[b].violated_by(pts[z]):
                return True
            return self._sep(blocks[b] + [z]) is not None

        def search():
            if not unassigned:
                return True
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                from .bounds import SearchLimitExceeded
                raise SearchLimitExceeded("partition search exceeded node limit")
            can_open = len(blocks) < k
            best = None
            for z in unassigned:
                cnt = len(options[z]) + (1 if can_open else 0)
                key = (cnt, -len(self.conflicts[z]), z)
                if best is None or key < best:
                    best = key
            if best[0] == 0:
                return False
            y = best[2]
            unassigned.discard(y)
            for b in sorted(options[y]):
                old_w = wits[b]
                w = old_w if old_w.violated_by(pts[y]) else self._sep(blocks[b] + [y])
                blocks[b].append(y)
                wits[b] = w
                removed = []
                for z in unassigned:
                    if b in options[z] and not feasible_join(b, z):
                        options[z].discard(b)
                        removed.append(z)
                if search():
                    return True
                for z in removed:
                    options[z].add(b)
                blocks[b].pop()
                wits[b] = old_w
            if can_open:
                b = len(blocks)
                blocks.append([y])
                wits.append(self.single[y])
                added = []
                for z in unassigned:
                    if z not in self.conflicts[y]:
                        options[z].add(b)
                        added.append(z)
                if search():
                    return True
                for z in added:
                    options[z].discard(b)
                blocks.pop()
                wits.pop()
            unassigned.add(y)
            return False

        if search():
            return [list(m) for m in blocks], list(wits)
        return None


def _conflict_sets(oracle: SeparationOracle, points: list) -> list:
    conf = [set() for _ in points]
    for i, j in itertools.combinations(range(len(points)), 2):
        if oracle.separate([points[i], points[j]]) is None:
            conf[i].add(j)
            conf[j].add(i)
    return conf


def _solve_core(oracle, points, lower_bound, node_limit):
    conflicts = _conflict_sets(oracle, points)
    G = HidingGraph(points, conflicts)
    if lower_bound == "chromatic":
        lb = chromatic_number(G)[0]
    else:
        lb = max_clique(G)[0]
    search = _PartitionSearch(oracle, points, conflicts, node_limit=node_limit)
    blocks, wits = search.greedy()
    ub = len(blocks)
    for k in range(max(lb, 1), ub):
        res = search.solve(k)
        if res is not None:
            blocks, wits = res
            break
    log.debug("core of %d points: lb=%d, k=%d, %d nodes", len(points), lb, len(blocks), search.nodes)
    return blocks, wits


def solve_separation(inner: Sequence, outer: Sequence, lower_bound: str = "clique",
                     core_size: int = 40, batch: int = 12,
                     node_limit: Optional[int] = None):
    """Minimum number of inequalities separating ``inner`` from ``outer``.

    ``outer`` points are processed in the given order (nearest first is the
    caller's job).  Returns ``(k, SeparationCertificate)``.  Raises ValueError
    if some outer point lies in the convex hull of ``inner``.
    """
    outer = [tuple(p) for p in outer]
    if not outer:
        return 0, SeparationCertificate([], {})
    oracle = SeparationOracle(inner)
    for y in outer[:core_size]:
        if oracle.separate([y]) is None:
            raise ValueError(f"outer point {y} lies in the convex hull of the inner set")
    core = list(outer[:core_size])
    in_core = set(core)
    rest = outer[core_size:]
    while True:
        blocks, wits = _solve_core(oracle, core, lower_bound, node_limit)
        k = len(blocks)
        members = [[core[i] for i in b] for b in blocks]
        assignment = {core[i]: bi for bi, b in enumerate(blocks) for i in b}
        leftovers = []
        for y in rest:
            if y in in_core:
                continue
            placed = False
            for b in range(k):
                if wits[b].violated_by(y):
                    assignment[y] = b
                    members[b].append(y)
                    placed = True
                    break
            if not placed:
                for b in range(k):
                    w = oracle.extend(members[b], wits[b], y)
                    if w is not None:
                        wits[b] = w
                        members[b].append(y)
                        assignment[y] = b
                        placed = True
                        break
            if not placed:
                if oracle.separate([y]) is None:
                    raise ValueError(f"outer point {y} lies in the convex hull of the inner set")
                leftovers.append(y)
        if not leftovers:
            cert = SeparationCertificate([w.normalized() for w in wits], assignment)
            log.debug("rc = %d after %d LP calls, core %d", k, oracle.lp_calls, len(core))
            return k, cert
        add = leftovers[:batch]
        core.extend(add)
        in_core.update(add)


def _distance_order(outer, X_points):
    def key(y):
        return (min(sum(abs(a - b) for a, b in zip(y, x)) for x in X_points), y)
    return sorted(outer, key=key)


def rc_finite(X: LatticeSet, Y, lower_bound: str = "clique", check: bool = True, **kw):
    """``rc(X, Y)`` with a certificate."""
    if check and not is_lattice_convex(X):
        raise ValueError("X is not lattice-convex")
    ypts = Y.points if isinstance(Y, LatticeSet) else frozenset(tuple(p) for p in Y)
    outer = _distance_order([y for y in ypts if y not in X.points], X.sorted())
    return solve_separation(X.sorted(), outer, lower_bound=lower_bound, **kw)


def eps_inner(X: LatticeSet, epsilon) -> list:
    """``X + epsilon * {0, +-e_1, ..., +-e_d}`` as rational points."""
    eps = as_rat(epsilon)
    pts = set()
    for x in X.points:
        pts.add(rat_point(x))
        for i in range(X.dim):
            for s in (eps, -eps):
                p = list(rat_point(x))
                p[i] += s
                pts.add(tuple(p))
    return sorted(pts)


def rc_eps(X: LatticeSet, epsilon, Y, lower_bound: str = "clique", **kw):
    """``rc_eps(X, Y)``: separate ``X_eps`` from the points of Y outside it."""
    eps = as_rat(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    inner = eps_inner(X, eps)
    inner_set = set(inner)
    ypts = Y.points if isinstance(Y, LatticeSet) else frozenset(tuple(p) for p in Y)
    outer = [y for y in ypts if rat_point(y) not in inner_set]
    outer = _distance_order(outer, X.sorted())
    return solve_separation(inner, outer, lower_bound=lower_bound, **kw)


@dataclass(frozen=True)
class EpsRegion:
    epsilon: Fraction
    constant: Fraction
    certificate_set: LatticeSet


def eps_constant(d: int, n_points: int, epsilon) -> Fraction:
    """``2 d! (|X| + 1) / eps^(d-1)``."""
    eps = as_rat(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return Fraction(2 * math.factorial(d) * (n_points + 1)) / eps ** (d - 1)


def _support_directions(d):
    if d <= 4:
        return [u for u in itertools.product((-1, 0, 1), repeat=d) if any(u)]
    dirs = []
    for i in range(d):
        for s in (1, -1):
            dirs.append(tuple(s if j == i else 0 for j in range(d)))
    for i, j in itertools.combinations(range(d), 2):
        for s, t in itertools.product((1, -1), repeat=2):
            v = [0] * d
            v[i], v[j] = s, t
            dirs.append(tuple(v))
    return dirs


def _in_dilation(q, pts, c, d) -> bool:
    """Is ``q`` in ``conv(pts) + c [-1, 1]^d``?  Decided exactly by LP."""
    n = len(pts)
    cons = [LinearConstraint([1] * n, "==", 1)]
    for i in range(d):
        row = [p[i] for p in pts]
        cons.append(LinearConstraint(row, ">=", q[i] - c))
        cons.append(LinearConstraint(row, "<=", q[i] + c))
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cons.append(LinearConstraint(e, ">=", 0))
    return lp_feasible(cons, n) is not None


def eps_region(X: LatticeSet, epsilon) -> EpsRegion:
    """The finite region ``(conv(X) + c [-1,1]^d) ∩ Z^d`` that certifies rc_eps."""
    eps = as_rat(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    d = X.dim
    if dim_of(X) != d:
        raise ValueError("X must be full-dimensional")
    c = eps_constant(d, len(X), eps)
    pts = X.sorted()
    bbox = X.bounding_box()
    ranges = [range(math.ceil(lo - c), math.floor(hi + c) + 1) for lo, hi in bbox]
    support = [(u, max(sum(a * b for a, b in zip(u, p)) for p in pts) + c * sum(map(abs, u)))
               for u in _support_directions(d)]
    keep = []
    for q in itertools.product(*ranges):
        if any(max(abs(a - b) for a, b in zip(q, p)) <= c for p in pts):
            keep.append(q)
            continue
        if any(sum(a * b for a, b in zip(u, q)) > h for u, h in support):
            continue
        if _in_dilation(q, pts, c, d):
            keep.append(q)
    return EpsRegion(eps, c, LatticeSet(d, frozenset(keep)))


def rc_eps_full(X: LatticeSet, epsilon, **kw):
    """``rc_eps(X)`` via the finite certificate region."""
    region = eps_region(X, epsilon)
    return rc_eps(X, epsilon, region.certificate_set, **kw)
