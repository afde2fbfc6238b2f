"""Rebuild the 28-point certificate for the 3-simplex and report its graph bounds."""
import argparse
import time
from pathlib import Path

from relaxcomp.bounds import chromatic_number, hiding_graph, max_clique, to_dot
from relaxcomp.formats import certificate_to_json
from relaxcomp.lattice import DELTA3_FIXTURE_EDGES, delta3_certificate, simplex
from relaxcomp.separation import rc_finite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, help="directory for DOT and certificate files")
    args = ap.parse_args()

    X, Y = simplex(3), delta3_certificate()
    t0 = time.perf_counter()
    G = hiding_graph(X, Y, keep_order=True)
    H = G.subgraph(DELTA3_FIXTURE_EDGES)
    print(f"hiding graph: {len(G)} vertices, {len(G.edges())} edges, clique {max_clique(G)[0]}")
    print(f"fixture subgraph: {len(H.edges())} edges, clique {max_clique(H)[0]}, chi {chromatic_number(H)[0]}")
    drops = sum(chromatic_number(H.without_edge(u, v))[0] == 3 for u, v in H.edges())
    print(f"edge deletions that make it 3-colourable: {drops}/{len(H.edges())}")
    k, cert = rc_finite(X, Y)
    print(f"rc(X, Y) = {k}")
    for w in cert.inequalities:
        print("  ", " ".join(str(v) for v in w.a), "<=", w.b)
    print(f"elapsed {time.perf_counter() - t0:.2f}s")
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "delta3_fixture.dot").write_text(to_dot(H, "delta3"))
        (args.out / "delta3_cert.json").write_text(certificate_to_json(cert))


if __name__ == "__main__":
    main()
