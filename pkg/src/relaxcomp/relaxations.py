"""Relaxation checks, explicit constructions and the iterative rc driver."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import HPolyhedron, Inequality, UnboundedError, lattice_points
from .lattice import LatticeSet, cross
from .separation import rc_finite

log = logging.getLogger(__name__)

__all__ = [
    "RelaxationCheck",
    "IterativeResult",
    "verify_relaxation",
    "box_simplex",
    "box_rc",
    "box_relaxation",
    "cross_relaxation",
    "normalize_rhs",
    "cross_lift",
    "iterative_rc",
    "RC_CROSS_CITED",
]

# rc of the crosspolytope is d + 1 for d = 3, 4.  A rational relaxation of a
# finite full-dimensional set is bounded and so has at least d + 1 facets; the
# same bound for irrational relaxations is cited here, not re-derived.
RC_CROSS_CITED = {3: 4, 4: 5}


@dataclass(frozen=True)
class RelaxationCheck:
    verified: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.verified


def verify_relaxation(Q: HPolyhedron, X: LatticeSet) -> RelaxationCheck:
    """Does ``Q ∩ Z^d = X`` hold?  Raises UnboundedError if Q is unbounded."""
    for x in X.sorted():
        if not Q.contains(x):
            return RelaxationCheck(False, x)
    pts = lattice_points(Q)
    extra = sorted(pts - X.points)
    if extra:
        return RelaxationCheck(False, extra[0])
    return RelaxationCheck(True)


def box_simplex(l: int, b: int) -> HPolyhedron:
    """Simplex relaxation of ``{0,1}^l x {0..b}`` with ``l + 2`` facets."""
    if l < 0 or b < 1:
        raise ValueError("need l >= 0 and b >= 1")
    n = l + 1
    w = [Fraction(1, (b + 1) ** i) for i in range(1, n + 1)]  # w[i-1] = (b+1)^-i
    rows = []
    for k in range(1, l + 1):
        a = [Fraction(0)] * n
        a[k - 1] = Fraction(1)
        for i in range(k + 1, n + 1):
            a[i - 1] = -w[i - 1]
        rows.append(Inequality(a, 1))
    a = [Fraction(0)] * n
    a[n - 1] = Fraction(1)
    rows.append(Inequality(a, b))
    a = [Fraction(0)] * n
    a[0] = Fraction(-1)
    for i in range(2, n + 1):
        a[i - 1] = -w[i - 1]
    rows.append(Inequality(a, 0))
    return HPolyhedron(tuple(rows))


def box_rc(k: int, l: int) -> int:
    """rc of a box with ``k`` segments of length >= 2 and ``l`` of length 1."""
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    return 2 * k + l


def box_relaxation(segments) -> HPolyhedron:
    """A relaxation of the discrete box with ``2k + l`` facets.

    Every long segment but one contributes its two bounds; the last long
    segment together with all unit segments is handled by :func:`box_simplex`.
    """
    segments = [(int(a), int(b)) for a, b in segments]
    d = len(segments)
    long_ = [i for i, (a, b) in enumerate(segments) if b - a >= 2]
    short = [i for i, (a, b) in enumerate(segments) if b - a == 1]
    if not long_ or len(long_) + len(short) != d:
        raise ValueError("need at least one segment of length >= 2 and the rest of length 1")
    rows = []
    for i in long_[:-1]:
        a, b = segments[i]
        e = [0] * d
        e[i] = 1
        rows.append(Inequality(e, b))
        e = [0] * d
        e[i] = -1
        rows.append(Inequality(e, -a))
    last = long_[-1]
    order = short + [last]  # local coordinate j <-> global coordinate order[j]
    base = box_simplex(len(short), segments[last][1] - segments[last][0])
    shift = [segments[i][0] for i in order]
    for r in base.rows:
        a = [Fraction(0)] * d
        for j, gi in enumerate(order):
            a[gi] = r.a[j]
        rhs = r.b + sum(r.a[j] * shift[j] for j in range(len(order)))
        rows.append(Inequality(a, rhs))
    return HPolyhedron(tuple(rows))


_CROSS3 = ([[8, 12, -13], [-8, -12, -13], [12, -8, 13], [-12, 8, 13]], [13, 13, 13, 13])
_CROSS4 = ([[6, -7, -7, -5], [-7, 3, -2, -7], [9, 7, 9, -4], [1, 2, -2, 2], [-6, -6, 5, 2]],
           [7, 7, 9, 2, 6])


def cross_relaxation(d: int) -> HPolyhedron:
    """Simplex relaxations of the discrete crosspolytope for ``d = 3, 4``."""
    if d == 3:
        return HPolyhedron.from_matrix(*_CROSS3)
    if d == 4:
        return HPolyhedron.from_matrix(*_CROSS4)
    raise ValueError("explicit crosspolytope relaxations exist only for d = 3, 4")


def normalize_rhs(Q: HPolyhedron) -> HPolyhedron:
    """Rescale every row to right hand side 1."""
    rows = []
    for r in Q.rows:
        if r.b <= 0:
            raise ValueError("rows with non-positive right hand side cannot be normalised")
        rows.append(Inequality(tuple(v / r.b for v in r.a), 1))
    return HPolyhedron(tuple(rows))


def cross_lift(A: HPolyhedron, check: bool = True) -> HPolyhedron:
    """Lift a relaxation ``Ax <= 1`` of the d-crosspolytope to dimension d + 1."""
    A = normalize_rhs(A)
    d = A.dim
    if check and not verify_relaxation(A, cross(d)):
        raise ValueError("input is not a relaxation of the crosspolytope")
    rows = []
    for r in A.rows:
        # A(x - y e_1) <= 1
        rows.append(Inequality(tuple(r.a) + (-r.a[0],), 1))
    e = [Fraction(0)] * (d + 1)
    e[0], e[d] = Fraction(1), Fraction(1)
    rows.append(Inequality(tuple(e), 1))
    rows.append(Inequality(tuple(-v for v in e), 1))
    return HPolyhedron(tuple(rows))


@dataclass
class IterativeResult:
    converged: bool
    k: int
    Q: Optional[HPolyhedron] = None
    rounds: int = 0
    history: list = field(default_factory=list)


def _points_in_box(Q: HPolyhedron | None, d: int, t: int):
    for z in itertools.product(range(-t, t + 1), repeat=d):
        if Q is None or Q.contains(z):
            yield z


def iterative_rc(X: LatticeSet, Y0, verify_box_t: int, max_rounds: int, **kw) -> IterativeResult:
    """Grow a finite test set until its optimal separation is a relaxation.

    Each round computes ``rc(X, Y)``; points of the box ``[-t, t]^d`` that the
    certificate fails to cut off are added to Y.  Convergence is only claimed
    after a full bounded lattice enumeration of the candidate.  If the box
    yields nothing while the candidate is still unverified, the box doubles.
    On exhaustion the last ``k`` is returned; it is a lower bound on rc(X).
    """
    d = X.dim
    Y = set(Y0.points if isinstance(Y0, LatticeSet) else map(tuple, Y0))
    t = verify_box_t
    k = 0
    history = []
    for rnd in range(1, max_rounds + 1):
        k, cert = rc_finite(X, Y, **kw)
        Q = HPolyhedron(tuple(cert.inequalities)) if cert.inequalities else None
        new = {z for z in _points_in_box(Q, d, t) if z not in X.points}
        history.append((k, len(Y), len(new)))
        log.info("round %d: rc(X, Y) = %d with |Y| = %d, %d new points", rnd, k, len(Y), len(new))
        if not new and Q is not None:
            try:
                extra = lattice_points(Q) - X.points
            except UnboundedError:
                t *= 2
                continue
            if not extra:
                return IterativeResult(True, k, Q, rnd, history)
            new = extra
        Y |= new
    return IterativeResult(False, k, None, max_rounds, history)
