"""Command line front end.

Every result is printed exactly (integers or ``p/q``) and stdout depends only
on the input bytes and flags; timing goes to stderr.  Exit codes: 0 success
(verified / converged), 1 negative outcome (fails / bound only / unbounded),
2 bad input.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bounds, formats, lattice, rc2d, relaxations, separation
from .exact import UnboundedError
from .lattice import LatticeSet, NotApplicable

PENTAGON = ((2, 1), (4, 1), (4, 2), (3, 3), (1, 2))


class InputError(Exception):
    pass


class _Out:
    """Collects stdout lines so that the report is written in one place."""

    def __init__(self, command: str, digest: str):
        self.lines = [f"command: {command}", f"input: {digest}"]

    def __call__(self, line: str):
        self.lines.append(line)

    def flush(self):
        sys.stdout.write("\n".join(self.lines) + "\n")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return "sha256:" + h.hexdigest()[:16]


def _points(path: str, allow_empty: bool = False):
    data = _read(path)
    try:
        d, pts = formats.read_point_list(data.decode())
    except formats.FormatError as e:
        raise InputError(f"{path}: {e}") from None
    if not pts and not allow_empty:
        raise InputError(f"{path}: no points")
    return data, LatticeSet(d, frozenset(pts)), pts


def _against(spec: str, X: LatticeSet):
    """Outer set from ``ball[:t]``, ``file:PATH`` or ``parity-obs``; ``(bytes, points)``."""
    if spec == "ball" or spec.startswith("ball:"):
        t = 1
        if ":" in spec:
            try:
                t = int(spec.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad ball radius in {spec!r}") from None
        if t < 1:
            raise InputError("ball radius must be at least 1")
        return spec.encode(), lattice.ball(X, t).sorted()
    if spec.startswith("file:"):
        data, Y, order = _points(spec[5:], allow_empty=True)
        if Y.dim != X.dim:
            raise InputError("outer set has the wrong dimension")
        return data, order
    if spec == "parity-obs":
        try:
            cand = lattice.parity_candidates(X)
        except NotApplicable as e:
            raise InputError(str(e)) from None
        return spec.encode(), lattice.observers_in_region(X, cand).sorted()
    raise InputError(f"unknown --against value {spec!r}")


def _require_convex(X: LatticeSet):
    if not lattice.is_lattice_convex(X):
        raise InputError("X is not lattice-convex")


def _write(path: str | None, text: str, out: _Out, label: str):
    if path:
        Path(path).write_text(text)
        out(f"{label}: {path}")


def _parse_eps(s: str) -> Fraction:
    try:
        eps = formats.parse_rat(s)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {s!r}") from None
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return eps


# ---------------------------------------------------------------------------


def cmd_rc2d(args) -> int:
    data, X, _ = _points(args.input)
    if X.dim != 2:
        raise InputError("rc2d needs a two-dimensional point set")
    if lattice.dim_of(X) != 2:
        raise InputError("point set is not full-dimensional")
    res = rc2d.rc_2d(X.sorted(), details=True)
    out = _Out("rc2d", _digest(data))
    out(f"rc = {res.k}")
    out(f"observers = {len(res.observers)}")
    out(f"arcs = {len(res.arcs)}")
    _write(args.cert, formats.certificate_to_json(res.certificate), out, "certificate")
    out.flush()
    return 0


def cmd_rc(args) -> int:
    data, X, _ = _points(args.input)
    _require_convex(X)
    ydata, Y = _against(args.against, X)
    k, cert = separation.rc_finite(X, Y, lower_bound=args.bound, check=False,
                                   node_limit=args.node_limit)
    out = _Out("rc", _digest(data, b"\0", ydata))
    out(f"|Y \\ X| = {sum(1 for y in Y if y not in X)}")
    out(f"rc = {k}")
    _write(args.cert, formats.certificate_to_json(cert), out, "certificate")
    out.flush()
    return 0


def cmd_rc_eps(args) -> int:
    data, X, _ = _points(args.input)
    _require_convex(X)
    eps = _parse_eps(args.eps)
    c = separation.eps_constant(X.dim, len(X), eps)
    if args.against:
        ydata, Y = _against(args.against, X)
    else:
        if lattice.dim_of(X) != X.dim:
            raise InputError("the certificate region needs a full-dimensional X")
        Y = separation.eps_region(X, eps).certificate_set.sorted()
        ydata = b"region"
    k, cert = separation.rc_eps(X, eps, Y, lower_bound=args.bound, node_limit=args.node_limit)
    out = _Out("rc-eps", _digest(data, b"\0", args.eps.encode(), b"\0", ydata))
    out(f"epsilon = {formats.fmt_rat(eps)}")
    out(f"constant = {formats.fmt_rat(c)}")
    out(f"|Y| = {len(Y)}")
    out(f"rc_eps = {k}")
    _write(args.cert, formats.certificate_to_json(cert), out, "certificate")
    out.flush()
    return 0


def _read_edges(path: str, n: int) -> list:
    edges = []
    for no, raw in enumerate(_read(path).decode().splitlines(), 1):
        s = raw.split("#", 1)[0].split()
        if not s:
            continue
        try:
            u, v = int(s[0]), int(s[1])
        except (ValueError, IndexError):
            raise InputError(f"{path}: line {no}: expected two vertex ids") from None
        if not (0 <= u < n and 0 <= v < n) or len(s) != 2:
            raise InputError(f"{path}: line {no}: bad edge")
        edges.append((u, v))
    return edges


def cmd_bounds(args) -> int:
    data, X, _ = _points(args.input)
    _require_convex(X)
    ydata, Y = _against(args.against, X)
    G = bounds.hiding_graph(X, Y, jobs=args.jobs, keep_order=True)
    digest_parts = [data, b"\0", ydata]
    if args.edges:
        edges = [(min(u, v), max(u, v)) for u, v in _read_edges(args.edges, len(G))]
        try:
            G = G.subgraph(edges)
        except ValueError as e:
            raise InputError(f"{args.edges}: {e}") from None
        digest_parts += [b"\0", _read(args.edges)]
    out = _Out("bounds", _digest(*digest_parts))
    clique, _ = bounds.max_clique(G)
    try:
        chi = str(bounds.chromatic_number(G, node_limit=args.node_limit)[0])
    except bounds.SearchLimitExceeded:
        chi = "unknown"
    out(f"vertices = {len(G)} edges = {len(G.edges())}")
    out(f"clique={clique} chromatic={chi}")
    _write(args.dot, bounds.to_dot(G), out, "dot")
    out.flush()
    return 0


def cmd_verify(args) -> int:
    qdata = _read(args.hpoly)
    try:
        Q = formats.read_hpoly(qdata.decode())
    except formats.FormatError as e:
        raise InputError(f"{args.hpoly}: {e}") from None
    data, X, _ = _points(args.input)
    if Q.dim != X.dim:
        raise InputError("dimension mismatch between Q and X")
    out = _Out("verify", _digest(qdata, b"\0", data))
    try:
        res = relaxations.verify_relaxation(Q, X)
    except UnboundedError:
        out("unbounded")
        out.flush()
        return 1
    if res.verified:
        out("verified")
        out.flush()
        return 0
    w = res.witness
    where = "point of X outside Q" if w in X else "lattice point of Q outside X"
    out(f"fails: {where} ({' '.join(str(v) for v in w)})")
    out.flush()
    return 1


def cmd_iterate(args) -> int:
    data, X, _ = _points(args.input)
    _require_convex(X)
    ydata, Y0 = _against(args.start, X)
    if args.box < 1 or args.rounds < 1:
        raise InputError("--box and --rounds must be positive")
    res = relaxations.iterative_rc(X, Y0, args.box, args.rounds)
    out = _Out("iterate", _digest(data, b"\0", ydata))
    for i, (k, ny, nnew) in enumerate(res.history, 1):
        out(f"round {i}: rc(X,Y) = {k} |Y| = {ny} new = {nnew}")
    if res.converged:
        out(f"converged: rc = {res.k}")
        _write(args.out, formats.write_hpoly(res.Q), out, "relaxation")
        out.flush()
        return 0
    out(f"bound only: rc >= {res.k}")
    out.flush()
    return 1


def _gen_text(name: str, params: list) -> str:
    def ints(n):
        if len(params) != n:
            raise InputError(f"gen {name} takes {n} integer parameter(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise InputError("parameters must be integers") from None

    if name == "simplex":
        return formats.write_points(lattice.simplex(*ints(1)))
    if name == "cross":
        return formats.write_points(lattice.cross(*ints(1)))
    if name == "cube":
        return formats.write_points(lattice.cube(*ints(1)))
    if name == "ball":
        d, t = ints(2)
        return formats.write_points(lattice.ball(d, t))
    if name == "box":
        segs = []
        for p in params:
            try:
                a, b = (int(v) for v in p.split(":"))
            except ValueError:
                raise InputError("box segments are written a:b") from None
            segs.append((a, b))
        if not segs:
            raise InputError("gen box needs at least one segment a:b")
        return formats.write_points(lattice.box(segs))
    if name == "debruijn":
        return formats.write_points(lattice.debruijn_set(*ints(1)))
    if name == "delta3-cert":
        ints(0)
        return formats.write_points(lattice.delta3_certificate())
    if name == "delta3-edges":
        ints(0)
        return "".join(f"{u} {v}\n" for u, v in lattice.DELTA3_FIXTURE_EDGES)
    if name == "pentagon":
        ints(0)
        P = rc2d.polygon_lattice_points(rc2d.hull_hrep_2d(PENTAGON))
        return formats.write_points(P)
    if name == "four-facet":
        (i,) = ints(1)
        if not 1 <= i <= 4:
            raise InputError("four-facet index must be 1..4")
        return formats.write_points(lattice.four_facet_sets()[i - 1])
    if name == "cross-relax":
        return formats.write_hpoly(relaxations.cross_relaxation(*ints(1)))
    if name == "cross-lift":
        (d,) = ints(1)
        if d < 4:
            raise InputError("cross-lift builds relaxations for d >= 4")
        Q = relaxations.cross_relaxation(4)
        for _ in range(4, d):
            Q = relaxations.cross_lift(Q, check=Q.dim <= 5)
        return formats.write_hpoly(Q)
    if name == "box-simplex":
        l, b = ints(2)
        return formats.write_hpoly(relaxations.box_simplex(l, b))
    raise InputError(f"unknown generator {name!r}")


GENERATORS = ("simplex", "cross", "cube", "ball", "box", "debruijn", "delta3-cert", "delta3-edges",
              "pentagon", "four-facet", "cross-relax", "cross-lift", "box-simplex")


def cmd_gen(args) -> int:
    try:
        text = _gen_text(args.name, args.params)
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relaxcomp", description="Exact relaxation complexity of lattice-convex sets.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, against=True, required=True):
        sp.add_argument("input", help="point file of X")
        if against:
            sp.add_argument("--against", required=required, default=None,
                            help="outer set: ball[:t] (size (2t+1)^d), file:PATH or parity-obs")
        sp.add_argument("--node-limit", type=int, default=None)

    sp = sub.add_parser("rc2d", help="rc of a planar lattice-convex set")
    sp.add_argument("input")
    sp.add_argument("--cert", help="write the certificate JSON here")
    sp.set_defaults(func=cmd_rc2d)

    sp = sub.add_parser("rc", help="rc(X, Y) for a finite outer set Y")
    common(sp)
    sp.add_argument("--bound", choices=("clique", "chromatic"), default="clique")
    sp.add_argument("--cert")
    sp.set_defaults(func=cmd_rc)

    sp = sub.add_parser("rc-eps", help="epsilon-robust rc, by default over the certificate region")
    common(sp, required=False)
    sp.add_argument("--eps", required=True, help="positive rational p/q")
    sp.add_argument("--bound", choices=("clique", "chromatic"), default="clique")
    sp.add_argument("--cert")
    sp.set_defaults(func=cmd_rc_eps)

    sp = sub.add_parser("bounds", help="clique and chromatic lower bounds from the hiding graph")
    common(sp)
    sp.add_argument("--edges", help="restrict to these edges (lines 'u v', ids in Y's file order)")
    sp.add_argument("--dot", help="write the graph in DOT format")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify", help="check that Q is a relaxation of X")
    sp.add_argument("hpoly")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("iterate", help="grow a test set until a relaxation is found")
    sp.add_argument("input")
    sp.add_argument("--start", default="ball:1")
    sp.add_argument("--box", type=int, default=3, help="half-width of the harvesting box")
    sp.add_argument("--rounds", type=int, default=10)
    sp.add_argument("--out", help="write the relaxation found here")
    sp.set_defaults(func=cmd_iterate)

    sp = sub.add_parser("gen", help="emit a named fixture")
    sp.add_argument("name", choices=GENERATORS)
    sp.add_argument("params", nargs="*")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.verbose:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
