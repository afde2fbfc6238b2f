"""Hiding graphs and the clique / chromatic lower bounds they give."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exact import extreme_points, rat_point, segment_hits_hull
from .lattice import LatticeSet

__all__ = [
    "HidingGraph",
    "SearchLimitExceeded",
    "hiding_graph",
    "hiding_pairs",
    "max_clique",
    "chromatic_number",
    "k_coloring",
    "to_dot",
]


class SearchLimitExceeded(RuntimeError):
    """An exact search exhausted its node budget before finishing."""


@dataclass
class HidingGraph:
    vertices: list
    adj: list = field(repr=False)

    @classmethod
    def from_edges(cls, vertices, edges) -> "HidingGraph":
        adj = [set() for _ in vertices]
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u].add(v)
            adj[v].add(u)
        return cls(list(vertices), adj)

    def __len__(self):
        return len(self.vertices)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list:
        return [(u, v) for u in range(len(self.adj)) for v in sorted(self.adj[u]) if u < v]

    def adjacency_matrix(self) -> list:
        n = len(self.vertices)
        return [[j in self.adj[i] for j in range(n)] for i in range(n)]

    def subgraph(self, edges) -> "HidingGraph":
        """Spanning subgraph keeping only ``edges`` (which must exist)."""
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
        return HidingGraph.from_edges(self.vertices, edges)

    def without_edge(self, u: int, v: int) -> "HidingGraph":
        return HidingGraph.from_edges(self.vertices, [e for e in self.edges() if e != (min(u, v), max(u, v))])


def _inner_points(X):
    if isinstance(X, LatticeSet):
        return [rat_point(p) for p in X.sorted()]
    return [rat_point(p) for p in X]


def _pair_chunk(args):
    inner, verts, pairs = args
    return [(u, v) for u, v in pairs if segment_hits_hull(verts[u], verts[v], inner)]


def hiding_graph(X, Y, jobs: int = 1, keep_order: bool = False) -> HidingGraph:
    """Graph on ``Y \\ X`` joining points whose connecting segment meets conv(X).

    ``X`` may be a :class:`LatticeSet` or any list of rational points.  With
    ``keep_order`` the vertex order of ``Y`` is preserved (useful for fixed
    ID numbering); otherwise vertices are sorted.
    """
    inner = _inner_points(X)
    inner_set = set(inner)
    inner = extreme_points(inner)
    ys = list(Y) if keep_order else sorted(Y)
    verts = [tuple(y) for y in ys if rat_point(y) not in inner_set]
    pairs = list(itertools.combinations(range(len(verts)), 2))
    if jobs > 1 and len(pairs) > 200:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            found = [e for part in ex.map(_pair_chunk, [(inner, verts, c) for c in chunks]) for e in part]
    else:
        found = _pair_chunk((inner, verts, pairs))
    return HidingGraph.from_edges(verts, sorted(found))


def hiding_pairs(X, Y) -> list:
    G = hiding_graph(X, Y)
    return [(G.vertices[u], G.vertices[v]) for u, v in G.edges()]


# ---------------------------------------------------------------------------
# maximum clique: branch and bound with greedy colouring bounds


def _colour_bound(cand, adj):
    """Greedy sequential colouring of ``cand``; returns vertices with colour numbers."""
    order, bounds = [], []
    uncoloured = list(cand)
    colour = 0
    while uncoloured:
        colour += 1
        remaining, klass = [], []
        for v in uncoloured:
            if klass and any(v in adj[w] for w in klass):
                remaining.append(v)
            else:
                klass.append(v)
        for v in klass:
            order.append(v)
            bounds.append(colour)
        uncoloured = remaining
    return order, bounds


def max_clique(G: HidingGraph):
    """Exact maximum clique; returns ``(size, sorted vertex indices)``."""
    n = len(G)
    if n == 0:
        return 0, []
    adj = G.adj
    best: list = []

    def expand(clique, cand):
        nonlocal best
        order, bounds = _colour_bound(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            new_clique = clique + [v]
            new_cand = [w for w in order[:i] if w in adj[v]]
            if new_cand:
                expand(new_clique, new_cand)
            elif len(new_clique) > len(best):
                best = new_clique

    start = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    expand([], start)
    return len(best), sorted(best)


# ---------------------------------------------------------------------------
# exact colouring: DSATUR backtracking for each k from the clique size up


def k_coloring(G: HidingGraph, k: int, node_limit: int | None = None):
    """A proper colouring with at most ``k`` colours, or None if none exists."""
    n = len(G)
    if n == 0:
        return {}
    if k <= 0:
        return None
    adj = G.adj
    colour = [-1] * n
    # count of neighbours per colour, per vertex
    nbr_count = [[0] * k for _ in range(n)]
    sat = [0] * n
    nodes = 0

    def assign(v, c):
        colour[v] = c
        for w in adj[v]:
            if nbr_count[w][c] == 0:
                sat[w] += 1
            nbr_count[w][c] += 1

    def unassign(v, c):
        colour[v] = -1
        for w in adj[v]:
            nbr_count[w][c] -= 1
            if nbr_count[w][c] == 0:
                sat[w] -= 1

    def search(used, left):
        nonlocal nodes
        if left == 0:
            return True
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise SearchLimitExceeded(f"k-colouring search exceeded {node_limit} nodes")
        v = max((u for u in range(n) if colour[u] < 0),
                key=lambda u: (sat[u], sum(1 for w in adj[u] if colour[w] < 0), -u))
        for c in range(min(used + 1, k)):
            if nbr_count[v][c]:
                continue
            assign(v, c)
            if search(max(used, c + 1), left - 1):
                return True
            unassign(v, c)
        return False

    if search(0, n):
        return {v: colour[v] for v in range(n)}
    return None


def chromatic_number(G: HidingGraph, node_limit: int | None = None):
    """Exact chromatic number; returns ``(chi, colouring)``."""
    if len(G) == 0:
        return 0, {}
    k, _ = max_clique(G)
    while True:
        col = k_coloring(G, k, node_limit=node_limit)
        if col is not None:
            return k, col
        k += 1


def _fmt(p):
    return "(" + ",".join(str(v) for v in p) + ")"


def to_dot(G: HidingGraph, name: str = "hiding") -> str:
    lines = [f"graph {name} {{"]
    for i, v in enumerate(G.vertices):
        lines.append(f'  {i} [label="{_fmt(v)}"];')
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
