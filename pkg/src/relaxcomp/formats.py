"""Plain-text point and H-polyhedron files, and certificate JSON."""
from __future__ import annotations

import json
from fractions import Fraction

from .exact import HPolyhedron, Inequality
from .lattice import LatticeSet
from .separation import SeparationCertificate

__all__ = [
    "FormatError",
    "fmt_rat",
    "parse_rat",
    "read_points",
    "read_point_list",
    "write_points",
    "read_hpoly",
    "write_hpoly",
    "certificate_to_json",
    "certificate_from_json",
]


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def fmt_rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rat(s: str) -> Fraction:
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def _lines(text: str):
    """Non-empty lines with 1-based numbers; ``#`` starts a comment."""
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield no, s.split()


def _header(it, what):
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError(f"empty {what} file") from None
    if len(toks) != 2:
        raise FormatError("header must be two integers", no)
    try:
        a, b = int(toks[0]), int(toks[1])
    except ValueError:
        raise FormatError("header must be two integers", no) from None
    if a < 1 or b < 0:
        raise FormatError("bad header values", no)
    return no, a, b


def read_point_list(text: str):
    """``(d, points)`` with points in file order."""
    it = _lines(text)
    _, d, n = _header(it, "point")
    seen = set()
    order = []
    for no, toks in it:
        if len(toks) != d:
            raise FormatError(f"expected {d} coordinates, got {len(toks)}", no)
        try:
            p = tuple(int(t) for t in toks)
        except ValueError:
            raise FormatError("coordinates must be integers", no) from None
        if p in seen:
            raise FormatError(f"duplicate point {p}", no)
        seen.add(p)
        order.append(p)
    if len(order) != n:
        raise FormatError(f"header announces {n} points, found {len(order)}")
    return d, order


def read_points(text: str) -> LatticeSet:
    d, pts = read_point_list(text)
    return LatticeSet(d, frozenset(pts))


def write_points(X) -> str:
    pts = X.sorted() if isinstance(X, LatticeSet) else [tuple(p) for p in X]
    d = X.dim if isinstance(X, LatticeSet) else len(pts[0])
    out = [f"{d} {len(pts)}"]
    out += [" ".join(str(v) for v in p) for p in pts]
    return "\n".join(out) + "\n"


def read_hpoly(text: str) -> HPolyhedron:
    it = _lines(text)
    _, d, m = _header(it, "H-polyhedron")
    rows = []
    for no, toks in it:
        if len(toks) != d + 1:
            raise FormatError(f"expected {d + 1} entries, got {len(toks)}", no)
        try:
            vals = [parse_rat(t) for t in toks]
        except (ValueError, ZeroDivisionError):
            raise FormatError("entries must be integers or p/q", no) from None
        rows.append(Inequality(tuple(vals[:d]), vals[d]))
    if len(rows) != m:
        raise FormatError(f"header announces {m} rows, found {len(rows)}")
    if not rows:
        raise FormatError("an H-polyhedron needs at least one row")
    return HPolyhedron(tuple(rows))


def write_hpoly(Q: HPolyhedron) -> str:
    out = [f"{Q.dim} {len(Q.rows)}"]
    out += [" ".join(fmt_rat(v) for v in (*r.a, r.b)) for r in Q.rows]
    return "\n".join(out) + "\n"


def certificate_to_json(cert: SeparationCertificate) -> str:
    doc = {
        "k": cert.k,
        "inequalities": [[fmt_rat(v) for v in (*w.a, w.b)] for w in cert.inequalities],
        "assignment": [{"point": [fmt_rat(v) for v in y], "inequality": i}
                       for y, i in sorted(cert.assignment.items())],
    }
    return json.dumps(doc, indent=1) + "\n"


def certificate_from_json(text: str) -> SeparationCertificate:
    doc = json.loads(text)
    ineqs = []
    for row in doc["inequalities"]:
        vals = [parse_rat(s) for s in row]
        ineqs.append(Inequality(tuple(vals[:-1]), vals[-1]))
    assignment = {}
    for item in doc["assignment"]:
        y = tuple(parse_rat(s) for s in item["point"])
        if all(v.denominator == 1 for v in y):
            y = tuple(int(v) for v in y)
        assignment[y] = int(item["inequality"])
    if int(doc["k"]) != len(ineqs):
        raise FormatError("k does not match the number of inequalities")
    return SeparationCertificate(ineqs, assignment)
