"""Exhaustive generation of small graphs up to isomorphism.

Graphs on n vertices are obtained from those on n-1 vertices by adding a vertex joined to
every possible subset; duplicates are removed with a canonical certificate (nauty when
available, otherwise a Weisfeiler-Lehman hash followed by explicit isomorphism tests).
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional

from .graph import Graph

try:  # pragma: no cover - exercised implicitly
    import pynauty

    def _certificate(g: Graph) -> bytes:
        adj = {v: [w for w in g.neighbors(v)] for v in range(g.n)}
        return bytes([g.n]) + pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))

    _HAVE_NAUTY = True
except ImportError:  # pragma: no cover
    _HAVE_NAUTY = False


def canonical_form(g: Graph):
    """A hashable isomorphism invariant that is complete (equal iff isomorphic)."""
    if _HAVE_NAUTY:
        return _certificate(g)
    best = None
    # small graphs only: brute-force minimum edge list over relabellings
    for perm in itertools.permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, best)


class _Deduper:
    def __init__(self):
        self.seen: dict = {}

    def add(self, g: Graph) -> bool:
        """True if g is new up to isomorphism."""
        if _HAVE_NAUTY:
            key = _certificate(g)
            if key in self.seen:
                return False
            self.seen[key] = g
            return True
        import networkx as nx

        ng = g.to_networkx()
        key = (g.n, g.m, tuple(sorted(g.degrees())), nx.weisfeiler_lehman_graph_hash(ng, iterations=3))
        bucket = self.seen.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(ng, other):
                return False
        bucket.append(ng)
        return True


@lru_cache(maxsize=16)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """Every graph on n vertices (connected or not), one per isomorphism class."""
    if n < 0:
        raise ValueError("negative order")
    if n == 0:
        return (Graph(0),)
    out = []
    dd = _Deduper()
    for g in all_graphs(n - 1):
        for size in range(n):
            for s in itertools.combinations(range(n - 1), size):
                h = g.add_vertex(s)
                if dd.add(h):
                    out.append(h)
    return tuple(out)


def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if g.is_connected())


def hereditary_sweep(
    keep: Callable[[Graph], bool],
    max_vertices: int,
    max_degree: Optional[int] = None,
) -> dict[int, list[Graph]]:
    """All connected graphs up to ``max_vertices`` vertices all of whose connected induced
    subgraphs satisfy ``keep``.

    Every connected graph has a vertex whose deletion leaves it connected, so growing one
    vertex at a time from the kept graphs reaches every such graph.
    """
    levels: dict[int, list[Graph]] = {1: [Graph(1)] if keep(Graph(1)) else []}
    for n in range(2, max_vertices + 1):
        dd = _Deduper()
        cur: list[Graph] = []
        for g in levels[n - 1]:
            degs = g.degrees()
            for size in range(1, n):
                if max_degree is not None and size > max_degree:
                    break
                for s in itertools.combinations(range(n - 1), size):
                    if max_degree is not None and any(degs[v] >= max_degree for v in s):
                        continue
                    h = g.add_vertex(s)
                    if dd.add(h) and keep(h):
                        cur.append(h)
        levels[n] = cur
    return levels


def rooted_trees(n: int) -> Iterator[tuple[Graph, int]]:
    """Every (tree, root) on n vertices; roots are not deduplicated under automorphisms."""
    import networkx as nx

    if n == 1:
        yield Graph(1), 0
        return
    for t in nx.nonisomorphic_trees(n):
        g = Graph.from_networkx(t)
        for r in range(n):
            yield g, r


def trees(n: int) -> Iterable[Graph]:
    import networkx as nx

    if n == 1:
        return [Graph(1)]
    return [Graph.from_networkx(t) for t in nx.nonisomorphic_trees(n)]
