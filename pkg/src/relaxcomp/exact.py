"""Exact rational LP and polyhedral primitives.

Everything here works over :class:`fractions.Fraction`; no floating point is
ever involved.  The LP engine is a dense two-phase tableau simplex with
Bland's rule, which is slow but cannot cycle.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rat = Fraction
RatPoint = tuple  # tuple of Fraction (or int) coordinates

__all__ = [
    "Rat",
    "LinearConstraint",
    "Inequality",
    "HPolyhedron",
    "UnboundedError",
    "lp_feasible",
    "lp_optimize",
    "separating_inequality",
    "conv_membership",
    "extreme_points",
    "segment_hits_hull",
    "lattice_points",
    "as_rat",
    "rat_point",
]


class UnboundedError(ValueError):
    """An LP or a lattice enumeration ran into an unbounded direction."""


def as_rat(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q'")
    return Fraction(v)


def rat_point(p: Iterable) -> tuple:
    return tuple(as_rat(v) for v in p)


def _dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple
    relation: str  # "<=", ">=" or "=="
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in ("<=", ">=", "=="):
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", rat_point(self.coeffs))
        object.__setattr__(self, "rhs", as_rat(self.rhs))

    def holds(self, x) -> bool:
        lhs = _dot(self.coeffs, x)
        if self.relation == "<=":
            return lhs <= self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class Inequality:
    """The closed halfspace ``a . x <= b``."""

    a: tuple
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rat_point(self.a))
        object.__setattr__(self, "b", as_rat(self.b))
        if not any(self.a) and self.b < 0:
            raise ValueError("0 . x <= b with b < 0 is empty")

    @property
    def dim(self) -> int:
        return len(self.a)

    def slack(self, x) -> Fraction:
        return self.b - _dot(self.a, x)

    def contains(self, x) -> bool:
        return _dot(self.a, x) <= self.b

    def violated_by(self, y) -> bool:
        return _dot(self.a, y) > self.b

    def normalized(self) -> "Inequality":
        """Positive rescaling to coprime integer data."""
        den = 1
        for v in (*self.a, self.b):
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in (*self.a, self.b)]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g == 0:
            return self
        return Inequality(tuple(v // g for v in ints[:-1]), ints[-1] // g)

    def as_constraint(self) -> LinearConstraint:
        return LinearConstraint(self.a, "<=", self.b)


@dataclass(frozen=True)
class HPolyhedron:
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        if rows and len({r.dim for r in rows}) != 1:
            raise ValueError("inequalities of mixed dimension")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_matrix(cls, A, b) -> "HPolyhedron":
        return cls(tuple(Inequality(tuple(row), rhs) for row, rhs in zip(A, b)))

    @property
    def dim(self) -> int:
        if not self.rows:
            raise ValueError("dimension of an empty system is undefined")
        return self.rows[0].dim

    def __len__(self):
        return len(self.rows)

    def contains(self, x) -> bool:
        return all(r.contains(x) for r in self.rows)

    def constraints(self) -> list:
        return [r.as_constraint() for r in self.rows]


# ---------------------------------------------------------------------------
# simplex engine


class _Tableau:
    """Dense tableau for ``min c.x  s.t.  A x = r, x >= 0`` with ``r >= 0``.

    Columns ``0..n-1`` are structural, ``n..n+m-1`` are artificials.  The
    last entry of every row is the right hand side.
    """

    def __init__(self, A, r):
        m = len(A)
        n = len(A[0]) if m else 0
        self.m, self.n = m, n
        self.sign = []
        rows = []
        for i, (row, ri) in enumerate(zip(A, r)):
            s = -1 if ri < 0 else 1
            self.sign.append(s)
            art = [Fraction(0)] * m
            art[i] = Fraction(1)
            rows.append([s * v for v in row] + art + [s * ri])
        self.rows = rows
        self.basis = list(range(n, n + m))
        # phase-1 reduced costs: minimise the sum of artificials
        z = [Fraction(0)] * (n + m + 1)
        for row in rows:
            for j in range(n):
                z[j] -= row[j]
            z[-1] -= row[-1]
        self.z = z

    def pivot(self, p: int, q: int) -> None:
        prow = self.rows[p]
        piv = prow[q]
        if piv != 1:
            prow = [v / piv for v in prow]
            self.rows[p] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == p:
                continue
            f = row[q]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        for obj in (self.z, getattr(self, "z2", None)):
            if obj is None:
                continue
            f = obj[q]
            if f:
                for j in nz:
                    obj[j] -= f * prow[j]
        self.basis[p] = q

    def run(self, zrow, allowed: int) -> bool:
        """Bland's rule on columns ``< allowed``.  False means unbounded."""
        while True:
            q = next((j for j in range(allowed) if zrow[j] < 0), None)
            if q is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[q] > 0:
                    ratio = row[-1] / row[q]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], q)

    def solution(self) -> list:
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.rows[i][-1]
        return x

    def farkas(self) -> list:
        # reduced cost of artificial i equals 1 - u_i
        return [self.sign[i] * (1 - self.z[self.n + i]) for i in range(self.m)]

    def drive_out_artificials(self) -> None:
        keep = []
        for i in range(self.m):
            if self.basis[i] < self.n:
                keep.append(i)
                continue
            row = self.rows[i]
            q = next((j for j in range(self.n) if row[j]), None)
            if q is not None:
                self.pivot(i, q)
                keep.append(i)
        if len(keep) < self.m:
            self.rows = [self.rows[i] for i in keep]
            self.basis = [self.basis[i] for i in keep]


def _phase1(A, r):
    tab = _Tableau(A, r)
    tab.run(tab.z, tab.n)
    return tab, tab.z[-1] == 0


def _standard_form(constraints: Sequence[LinearConstraint], dim: int):
    for c in constraints:
        if len(c.coeffs) != dim:
            raise ValueError(
                f"constraint has {len(c.coeffs)} coefficients, expected {dim}")
    n_slack = sum(1 for c in constraints if c.relation != "==")
    A, r = [], []
    k = 0
    for c in constraints:
        row = list(c.coeffs) + [-v for v in c.coeffs] + [Fraction(0)] * n_slack
        if c.relation == "<=":
            row[2 * dim + k] = Fraction(1)
            k += 1
        elif c.relation == ">=":
            row[2 * dim + k] = Fraction(-1)
            k += 1
        A.append(row)
        r.append(c.rhs)
    return A, r


def lp_feasible(constraints: Sequence[LinearConstraint], dim: int) -> Optional[tuple]:
    """Return a rational point satisfying every constraint, or None."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if not constraints:
        return tuple(Fraction(0) for _ in range(dim))
    A, r = _standard_form(constraints, dim)
    tab, ok = _phase1(A, r)
    if not ok:
        return None
    x = tab.solution()
    return tuple(x[i] - x[dim + i] for i in range(dim))


def lp_optimize(constraints: Sequence[LinearConstraint], objective, dim: int,
                maximize: bool = True):
    """Optimise ``objective . x``; returns ``(value, point)`` or None if infeasible.

    Raises :class:`UnboundedError` if the objective is unbounded.
    """
    objective = rat_point(objective)
    if len(objective) != dim:
        raise ValueError("objective has wrong dimension")
    if not constraints:
        if any(objective):
            raise UnboundedError("unconstrained LP with nonzero objective")
        return Fraction(0), tuple(Fraction(0) for _ in range(dim))
    A, r = _standard_form(constraints, dim)
    tab, ok = _phase1(A, r)
    if not ok:
        return None
    tab.drive_out_artificials()
    sgn = -1 if maximize else 1
    cost = [sgn * v for v in objective] + [-sgn * v for v in objective]
    cost += [Fraction(0)] * (tab.n - len(cost))
    z2 = cost + [Fraction(0)] * tab.m + [Fraction(0)]
    for i, j in enumerate(tab.basis):
        f = z2[j]
        if f:
            row = tab.rows[i]
            for t in range(len(z2)):
                z2[t] -= f * row[t]
    tab.z2 = z2
    if not tab.run(z2, tab.n):
        raise UnboundedError("LP objective is unbounded")
    x = tab.solution()
    pt = tuple(x[i] - x[dim + i] for i in range(dim))
    return _dot(objective, pt), pt


def separating_inequality(inner: Sequence, outer: Sequence) -> Optional[Inequality]:
    """Strictly separate two finite point sets, or return None if their hulls meet.

    Solves the barycentric system ``sum l_i x_i = sum m_j y_j`` with ``l``, ``m``
    in the standard simplices.  If it is infeasible, the phase-1 Farkas
    multipliers give ``a, b`` with ``a.x <= b`` on ``inner`` and
    ``a.y >= b + 1`` on ``outer``.
    """
    if not inner or not outer:
        raise ValueError("both point sets must be nonempty")
    d = len(inner[0])
    if any(len(p) != d for p in (*inner, *outer)):
        raise ValueError("dimension mismatch")
    zero, one = Fraction(0), Fraction(1)
    cols = [tuple(as_rat(v) for v in x) + (one, zero) for x in inner]
    cols += [tuple(-as_rat(v) for v in y) + (zero, one) for y in outer]
    A = [[c[i] for c in cols] for i in range(d + 2)]
    r = [zero] * d + [one, one]
    tab, ok = _phase1(A, r)
    if ok:
        return None
    u = tab.farkas()
    a, beta, gamma = u[:d], u[d], u[d + 1]
    margin = beta + gamma
    return Inequality(tuple(v / margin for v in a), -beta / margin)


def conv_membership(q, S: Sequence) -> bool:
    """True iff ``q`` lies in the convex hull of ``S``."""
    if not S:
        raise ValueError("S must be nonempty")
    return separating_inequality(list(S), [q]) is None


def extreme_points(S: Sequence) -> list:
    """Vertices of conv(S), in input order, duplicates dropped."""
    pts = list(dict.fromkeys(rat_point(p) for p in S))
    if len(pts) <= 2:
        return pts
    keep = []
    for i, p in enumerate(pts):
        rest = pts[:i] + pts[i + 1:]
        if separating_inequality(rest, [p]) is not None:
            keep.append(p)
    return keep


def segment_hits_hull(p, q, S: Sequence) -> bool:
    """True iff the segment ``[p, q]`` meets ``conv(S)``."""
    if not S:
        raise ValueError("S must be nonempty")
    return separating_inequality(list(S), [p, q]) is None


def coordinate_bounds(P: HPolyhedron) -> Optional[list]:
    """Integer box ``[(lo, hi), ...]`` containing P, or None if P is empty."""
    d = P.dim
    cons = P.constraints()
    if lp_feasible(cons, d) is None:
        return None
    box = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        hi = lp_optimize(cons, e, d, maximize=True)
        lo = lp_optimize(cons, e, d, maximize=False)
        box.append((math.ceil(lo[0]), math.floor(hi[0])))
    return box


def lattice_points(P: HPolyhedron) -> frozenset:
    """All integer points of a bounded polyhedron.

    Boundedness is certified coordinate-wise by LP; the integer box is then
    scanned row-major and filtered exactly.
    """
    box = coordinate_bounds(P)
    if box is None:
        return frozenset()
    ranges = [range(lo, hi + 1) for lo, hi in box]
    rows = [(tuple(r.a), r.b) for r in P.rows]
    out = []
    for z in itertools.product(*ranges):
        if all(_dot(a, z) <= b for a, b in rows):
            out.append(z)
    return frozenset(out)
