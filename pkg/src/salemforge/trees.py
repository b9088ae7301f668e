"""Rooted trees, their quotients q_T and nu-values, and Salem-tree constructions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidReference, NonCyclotomicChild, NotSalemTreeError, NotTypeA
from .graph import Graph
from .poly import IntPoly
from .ratfunc import INF, NuValue, RatFunc
from .salem import SalemClassification, classify, reciprocal_poly

Z_PLUS_1 = IntPoly([1, 1])
Z = IntPoly([0, 1])


class RootedGraph:
    """A connected graph with a distinguished root vertex."""

    __slots__ = ("graph", "root", "label")

    def __init__(self, graph: Graph, root: int, label: Optional[str] = None):
        if not graph.is_connected():
            raise InvalidReference("rooted graphs must be connected")
        graph._check_vertex(root)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "label", label)

    def __setattr__(self, *_):
        raise AttributeError("immutable")

    @property
    def n(self) -> int:
        return self.graph.n

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.graph == other.graph and self.root == other.root

    def __hash__(self) -> int:
        return hash((self.graph, self.root))

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"{type(self).__name__}({self.graph.n} vertices, root={self.root}{tag})"

    def __str__(self) -> str:
        return self.label or repr(self)


class RootedTree(RootedGraph):
    """A tree with a distinguished root."""

    __slots__ = ()

    def __init__(self, graph: Graph, root: int, label: Optional[str] = None):
        super().__init__(graph, root, label)
        if not graph.is_tree():
            raise InvalidReference("graph is not a tree")

    def parents(self) -> tuple[list[int], list[int]]:
        """(parent array, BFS order from the root)."""
        g = self.graph
        parent = [-1] * g.n
        order = [self.root]
        seen = [False] * g.n
        seen[self.root] = True
        for v in order:
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    order.append(w)
        return parent, order

    def children(self, v: Optional[int] = None) -> list[int]:
        v = self.root if v is None else v
        parent, _ = self.parents()
        return [w for w in self.graph.neighbors(v) if parent[w] == v]

    def subtree(self, v: int) -> RootedTree:
        """The subtree hanging below v, rooted at v."""
        parent, order = self.parents()
        keep = {v}
        for w in order:
            if parent[w] in keep:
                keep.add(w)
        verts = sorted(keep)
        return RootedTree(self.graph.induced_subgraph(verts), verts.index(v))

    def branches(self) -> list[RootedTree]:
        """The rooted subtrees at the children of the root: the forest T'."""
        return [self.subtree(c) for c in self.children()]

    @classmethod
    def from_children(cls, children: Sequence[RootedGraph], label: Optional[str] = None) -> RootedTree:
        """New root 0 joined to the root of each child; children are numbered in order after it."""
        g, _ = _root_over(children)
        return cls(g, 0, label)

    @classmethod
    def single(cls) -> RootedTree:
        return cls(Graph(1), 0, "*")


def _root_over(children: Sequence[RootedGraph]) -> tuple[Graph, list[int]]:
    edges: list[tuple[int, int]] = []
    offset = 1
    roots = []
    for c in children:
        edges.extend((i + offset, j + offset) for i, j in c.graph.edges)
        edges.append((0, c.root + offset))
        roots.append(c.root + offset)
        offset += c.graph.n
    return Graph(offset, edges), roots


# -- quotients -------------------------------------------------------------------

def _quotient_pair(t: RootedTree, white: Optional[Iterable[int]] = None) -> tuple[IntPoly, IntPoly]:
    white = set(white or ())
    parent, order = t.parents()
    num: list = [None] * t.n
    den: list = [None] * t.n
    for v in reversed(order):
        if v in white:
            num[v], den[v] = IntPoly([1]), Z
            continue
        kids = [w for w in t.graph.neighbors(v) if parent[w] == v]
        if not kids:
            num[v], den[v] = IntPoly([1]), Z_PLUS_1
            continue
        # sum of child quotients as a / b, then q = b / ((z+1) b - z a)
        b = IntPoly([1])
        for c in kids:
            b = b * den[c]
        a = IntPoly()
        for i, c in enumerate(kids):
            term = num[c]
            for j, c2 in enumerate(kids):
                if j != i:
                    term = term * den[c2]
            a = a + term
        num[v], den[v] = b, Z_PLUS_1 * b - Z * a
    return num[t.root], den[t.root]


def quotient(t: RootedGraph) -> RatFunc:
    """q_T by the recursion q = 1/(z + 1 - z * sum of child quotients), q = 1/(z+1) at a leaf.

    Rooted graphs that are not trees fall back to the direct formula.
    """
    if not isinstance(t, RootedTree) and not t.graph.is_tree():
        return quotient_direct(t)
    if not isinstance(t, RootedTree):
        t = RootedTree(t.graph, t.root)
    n, d = _quotient_pair(t)
    return RatFunc(n, d)


def quotient_direct(t: RootedGraph) -> RatFunc:
    """R(G - root) / R(G) with each factor a reciprocal polynomial of a component."""
    g = t.graph
    rest = g.delete_vertex(t.root)
    num = IntPoly([1])
    for comp in rest.component_graphs():
        num = num * reciprocal_poly(comp)
    return RatFunc(num, reciprocal_poly(g))


def nu(t: RootedGraph) -> NuValue:
    """q_T(1): an exact Fraction, or ``inf`` at a pole."""
    return quotient(t).at_one()


def forest_nu(children: Iterable[RootedGraph]) -> NuValue:
    total: NuValue = Fraction(0)
    for c in children:
        v = nu(c)
        if v == INF:
            return INF
        total += v
    return total


def join(t1: RootedTree, t2: RootedTree) -> RootedTree:
    """Join the roots by an edge; the root of t1 stays the root."""
    g = t1.graph.disjoint_union(t2.graph).add_edge(t1.root, t2.root + t1.n)
    label = f"{t1.label}+{t2.label}" if t1.label and t2.label else None
    return RootedTree(g, t1.root, label)


def join_quotient(q1: RatFunc, q2: RatFunc) -> RatFunc:
    """q1 / (1 - z q1 q2)."""
    return q1 / (1 - RatFunc(Z) * q1 * q2)


# -- Salem-tree constructions ------------------------------------------------------

@dataclass(frozen=True)
class TypeAResult:
    tree: RootedTree
    classification: SalemClassification
    nu_forest: NuValue


@dataclass(frozen=True)
class TypeBResult:
    tree: RootedTree
    classification: SalemClassification
    nu1: NuValue
    nu2: NuValue
    product: NuValue
    condition_holds: bool


def _check_cyclotomic_children(children: Sequence[RootedGraph]) -> None:
    for c in children:
        if not classify(c.graph).is_cyclotomic:
            raise NonCyclotomicChild(f"child {c} is not cyclotomic")


def salem_tree_type_a(children: Sequence[RootedGraph]) -> TypeAResult:
    """Root joined to the roots of cyclotomic rooted trees.

    Salem when the nu-values of the children sum to more than 2, cyclotomic otherwise.
    """
    children = list(children)
    _check_cyclotomic_children(children)
    label = "{" + ",".join(str(c) for c in children) + "}" if all(c.label for c in children) else None
    t = RootedTree.from_children(children, label)
    return TypeAResult(t, classify(t.graph), forest_nu(children))


def _as_type_a(x, strict: bool) -> tuple[RootedTree, NuValue]:
    if isinstance(x, TypeAResult):
        tree, v = x.tree, x.nu_forest
    elif isinstance(x, RootedTree):
        tree = x
        branches = tree.branches()
        try:
            _check_cyclotomic_children(branches)
        except NonCyclotomicChild as exc:
            raise NotTypeA(str(exc)) from None
        v = forest_nu(branches)
    else:
        children = list(x)
        try:
            res = salem_tree_type_a(children)
        except NonCyclotomicChild as exc:
            raise NotTypeA(str(exc)) from None
        tree, v = res.tree, res.nu_forest
    if strict and v == INF:
        raise NotTypeA("the forest below the root has infinite nu")
    if strict and v <= 2:
        raise NotTypeA(f"forest nu-value {v} is not above 2")
    return tree, v


def _homogeneous(v: NuValue) -> tuple[int, int]:
    if v == INF:
        return 1, 0
    v = Fraction(v)
    return v.numerator, v.denominator


def join_condition(v1: NuValue, v2: NuValue) -> tuple[NuValue, bool]:
    """((nu1 - 2)(nu2 - 2), whether it is <= 1), read projectively so that nu = inf works:
    with nu = N/D the test is (N1 - 2 D1)(N2 - 2 D2) <= D1 D2."""
    n1, d1 = _homogeneous(v1)
    n2, d2 = _homogeneous(v2)
    lhs = (n1 - 2 * d1) * (n2 - 2 * d2)
    holds = lhs <= d1 * d2
    if d1 * d2:
        return Fraction(lhs, d1 * d2), holds
    return (INF if lhs > 0 else -INF if lhs < 0 else math.nan), holds


def salem_tree_type_b(t1, t2, strict: bool = False) -> TypeBResult:
    """Join two trees whose root-deleted forests are cyclotomic.

    Salem when (nu1 - 2)(nu2 - 2) <= 1 (see ``join_condition`` for infinite nu).  Each
    argument is a TypeAResult, a RootedTree whose root is the centre, or a list of cyclotomic
    rooted children.  With ``strict`` each side must be a Salem tree of type (a) with finite
    nu > 2; by default any nu, including inf, is accepted.
    """
    a, v1 = _as_type_a(t1, strict)
    b, v2 = _as_type_a(t2, strict)
    prod, holds = join_condition(v1, v2)
    t = join(a, b)
    label = f"{a.label};{b.label}" if a.label and b.label else None
    t = RootedTree(t.graph, t.root, label)
    return TypeBResult(t, classify(t.graph), v1, v2, prod, holds)


# -- decomposition -------------------------------------------------------------------

@dataclass(frozen=True)
class TypeA:
    center: int


@dataclass(frozen=True)
class TypeB:
    edge: tuple[int, int]


Decomposition = Union[TypeA, TypeB]


def decompose_salem_tree(t: Graph, start: int = 0) -> Decomposition:
    """Walk towards the Salem part until a certificate appears.

    At the current vertex: if every component of T - v is cyclotomic, v is a type-(a) centre.
    Otherwise move to the neighbour inside the unique non-cyclotomic component; returning
    to the previous vertex identifies a type-(b) edge.
    """
    if not t.is_tree():
        raise NotSalemTreeError("input is not a tree")
    c = classify(t)
    if not c.is_salem:
        raise NotSalemTreeError(f"tree is {c.tag}")
    prev, cur = -1, start
    for _ in range(t.n + 1):
        rest = t.delete_vertex(cur)
        comps = rest.components()
        bad = []
        for comp in comps:
            sub = rest.induced_subgraph(comp)
            if not classify(sub).is_cyclotomic:
                bad.append(comp)
        if not bad:
            return TypeA(cur)
        if len(bad) > 1:
            raise NotSalemTreeError("more than one non-cyclotomic branch")
        # map back: rest vertex k is original k if k < cur else k + 1
        comp_orig = {k if k < cur else k + 1 for k in bad[0]}
        nxt = next(w for w in t.neighbors(cur) if w in comp_orig)
        if nxt == prev:
            return TypeB((min(cur, prev), max(cur, prev)))
        prev, cur = cur, nxt
    raise NotSalemTreeError("walk did not terminate")


def type_b_certificate(t: Graph, edge: tuple[int, int]) -> Optional[TypeBResult]:
    """Check that cutting ``edge`` exhibits t as a valid type-(b) join; None if it does not."""
    u, w = edge
    if not t.has_edge(u, w):
        raise InvalidReference(f"no edge {edge}")
    cut = t.delete_edge(u, w)
    comps = cut.components()
    side_u = next(c for c in comps if u in c)
    side_w = next(c for c in comps if w in c)
    t1 = RootedTree(cut.induced_subgraph(side_u), sorted(side_u).index(u))
    t2 = RootedTree(cut.induced_subgraph(side_w), sorted(side_w).index(w))
    try:
        res = salem_tree_type_b(t1, t2)
    except NotTypeA:
        return None
    return res if res.condition_holds else None


def nu_recursion(children_nu: Iterable[NuValue]) -> NuValue:
    """nu of a tree from the nu-values of its root's children: 1 / (2 - sum), inf if sum = 2."""
    s = Fraction(0)
    for v in children_nu:
        if v == INF:
            raise ValueError("recursion needs finite child nu-values")
        s += v
    if s == 2:
        return INF
    return 1 / (2 - s)


def is_finite(v: NuValue) -> bool:
    return not (isinstance(v, float) and math.isinf(v))
