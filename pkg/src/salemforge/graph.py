"""Finite simple undirected graphs on vertices 0..n-1."""
from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Optional

from .errors import InvalidReference, ParseError


def _norm_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


class Graph:
    """Immutable simple graph.  Edges are stored as sorted pairs (i, j) with i < j."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidReference("negative vertex count")
        es = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise InvalidReference(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidReference(f"edge ({i}, {j}) outside 0..{n - 1}")
            es.add(_norm_edge(i, j))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(es))
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, j in sorted(es):
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def __setattr__(self, *_):
        raise AttributeError("Graph is immutable")

    # -- basic queries ------------------------------------------------------
    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for i, j in self.edges:
            a[i][j] = a[j][i] = 1
        return a

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InvalidReference(f"vertex {v} not in 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {self.sorted_edges()})"

    # -- structure ----------------------------------------------------------
    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.m == self.n - 1

    def is_bipartite(self) -> tuple[bool, Optional[list[int]]]:
        """BFS two-colouring; returns (True, colours) or (False, None)."""
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if colour[w] < 0:
                        colour[w] = 1 - colour[u]
                        queue.append(w)
                    elif colour[w] == colour[u]:
                        return False, None
        return True, colour

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, vertices renumbered in increasing order."""
        vs = sorted(set(vertices))
        for v in vs:
            self._check_vertex(v)
        index = {v: k for k, v in enumerate(vs)}
        return Graph(len(vs), [(index[i], index[j]) for i, j in self.edges if i in index and j in index])

    def component_graphs(self) -> list[Graph]:
        return [self.induced_subgraph(c) for c in self.components()]

    # -- edits ----------------------------------------------------------------
    def delete_vertex(self, v: int) -> Graph:
        self._check_vertex(v)
        return self.induced_subgraph(u for u in range(self.n) if u != v)

    def delete_edge(self, i: int, j: int) -> Graph:
        if not self.has_edge(i, j):
            raise InvalidReference(f"no edge ({i}, {j})")
        return Graph(self.n, self.edges - {_norm_edge(i, j)})

    def add_edge(self, i: int, j: int) -> Graph:
        return Graph(self.n, set(self.edges) | {_norm_edge(i, j)})

    def add_vertex(self, neighbours: Iterable[int] = ()) -> Graph:
        """New vertex n joined to the given vertices."""
        nb = list(neighbours)
        for v in nb:
            self._check_vertex(v)
        return Graph(self.n + 1, list(self.edges) + [(v, self.n) for v in nb])

    def subdivide_edge(self, e: tuple[int, int], times: int = 1) -> Graph:
        """Replace edge e by a path through ``times`` new vertices (numbered n, n+1, ...)."""
        i, j = e
        if not self.has_edge(i, j):
            raise InvalidReference(f"no edge ({i}, {j})")
        if times < 0:
            raise InvalidReference("negative subdivision count")
        if times == 0:
            return self
        new = list(range(self.n, self.n + times))
        chain = [i] + new + [j]
        edges = set(self.edges) - {_norm_edge(i, j)}
        edges.update(zip(chain, chain[1:]))
        return Graph(self.n + times, edges)

    def attach_path(self, v: int, m: int) -> Graph:
        """Add an m-vertex path whose first vertex is joined to v (new vertices n..n+m-1)."""
        self._check_vertex(v)
        if m < 0:
            raise InvalidReference("negative path length")
        chain = [v] + list(range(self.n, self.n + m))
        return Graph(self.n + m, list(self.edges) + list(zip(chain, chain[1:])))

    def line_graph(self) -> Graph:
        """Vertices are the edges of self in sorted order; adjacency means a shared endpoint."""
        es = self.sorted_edges()
        out = []
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                if set(es[a]) & set(es[b]):
                    out.append((a, b))
        return Graph(len(es), out)

    def disjoint_union(self, other: Graph) -> Graph:
        return Graph(self.n + other.n, list(self.edges) + [(i + self.n, j + self.n) for i, j in other.edges])

    def relabel(self, perm: list[int]) -> Graph:
        """Vertex v becomes perm[v]."""
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    # -- interop and I/O ------------------------------------------------------
    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g) -> Graph:
        nodes = sorted(g.nodes())
        index = {v: k for k, v in enumerate(nodes)}
        return cls(len(nodes), [(index[a], index[b]) for a, b in g.edges()])

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        rows = [r for r in rows if r]
        if not rows:
            raise ParseError("empty graph file")
        try:
            n = int(rows[0])
            edges = []
            for r in rows[1:]:
                i, j = r.split()
                edges.append((int(i), int(j)))
        except ValueError as exc:
            raise ParseError(f"bad graph text: {exc}") from None
        return cls(n, edges)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        try:
            return cls(int(d["n"]), [tuple(e) for e in d.get("edges", [])])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> Graph:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad graph JSON: {exc}") from None
        return cls.from_dict(d)

    @classmethod
    def parse(cls, text: str) -> Graph:
        s = text.strip()
        return cls.from_json(s) if s.startswith("{") else cls.from_text(s)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidReference("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(d: int) -> Graph:
    return Graph(d + 1, [(0, k) for k in range(1, d + 1)])
