"""Graph families with growing paths, their leading polynomials, and Pisot limits.

A ``GrowthSpec`` names a base graph, pendant sites where new paths are attached and
lengthened, and internal edges that are subdivided more and more.  The reciprocal
polynomial of the grown graph behaves like a polynomial in y^(2m) for each growing length
m (y = sqrt z for bipartite graphs, y = z otherwise); the coefficient of the top power is
the leading polynomial, whose non-cyclotomic core is the Pisot polynomial of the limit.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cyclotomic import strip_trivial_factors
from .errors import (
    InvalidReference,
    LengthMismatch,
    NotEventuallySalem,
    ParseError,
    RootIsWhite,
)
from .graph import Graph
from .measure import PisotCertificate, certify_pisot
from .poly import IntPoly
from .ratfunc import RatFunc
from .realroots import RealAlgebraic, unique_root_above
from .salem import classify, reciprocal_poly
from .trees import RootedTree, _quotient_pair

SAMPLE_LENGTHS = (8, 12, 16)


@dataclass(frozen=True)
class GrowthSpec:
    base: Graph
    pendant: tuple[tuple[int, int], ...] = ()
    internal: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pendant", tuple((int(v), int(c)) for v, c in self.pendant))
        object.__setattr__(self, "internal", tuple((int(i), int(j)) for i, j in self.internal))
        for v, c in self.pendant:
            self.base._check_vertex(v)
            if c < 1:
                raise InvalidReference("pendant multiplicity must be positive")
        for i, j in self.internal:
            if not self.base.has_edge(i, j):
                raise InvalidReference(f"internal site ({i}, {j}) is not an edge")

    @property
    def pendant_vertices(self) -> list[int]:
        """One entry per growing pendant path."""
        return [v for v, c in self.pendant for _ in range(c)]

    @property
    def site_count(self) -> int:
        return len(self.pendant_vertices) + len(self.internal)

    def broken(self) -> GrowthSpec:
        """Each internal edge removed and replaced by growing paths at both of its ends."""
        if not self.internal:
            return self
        g = self.base
        extra: dict[int, int] = {}
        for i, j in self.internal:
            g = g.delete_edge(i, j)
            extra[i] = extra.get(i, 0) + 1
            extra[j] = extra.get(j, 0) + 1
        pend = dict()
        for v, c in self.pendant:
            pend[v] = pend.get(v, 0) + c
        for v, c in extra.items():
            pend[v] = pend.get(v, 0) + c
        return GrowthSpec(g, tuple(sorted(pend.items())), ())

    # -- I/O ---------------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "pendant": [{"v": v, "count": c} for v, c in self.pendant],
            "internal": [list(e) for e in self.internal],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> GrowthSpec:
        try:
            base = Graph.from_dict(d["base"])
            pend = tuple((int(p["v"]), int(p.get("count", 1))) for p in d.get("pendant", []))
            internal = tuple((int(e[0]), int(e[1])) for e in d.get("internal", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad growth spec: {exc}") from None
        return cls(base, pend, internal)

    @classmethod
    def from_json(cls, text: str) -> GrowthSpec:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad growth spec JSON: {exc}") from None


def attach_grown(spec: GrowthSpec, lengths: Sequence[int]) -> Graph:
    """The concrete graph: one length per pendant path, then one subdivision count per internal edge."""
    pv = spec.pendant_vertices
    if len(lengths) != len(pv) + len(spec.internal):
        raise LengthMismatch(f"expected {len(pv) + len(spec.internal)} lengths, got {len(lengths)}")
    g = spec.base
    for v, m in zip(pv, lengths):
        g = g.attach_path(v, m)
    for e, m in zip(spec.internal, lengths[len(pv):]):
        g = g.subdivide_edge(e, m)
    return g


def _y_squared(g: Graph) -> IntPoly:
    bip, _ = g.is_bipartite()
    return IntPoly([0, 1]) if bip else IntPoly([0, 0, 1])


def leading_poly_single(base: Graph, v: int, check: bool = True) -> IntPoly:
    """P = R_1 - R_0, where R_m is the reciprocal polynomial with an m-vertex path at v.

    With ``check`` the identity (y^2 - 1) R_m = y^(2m) P - P* is confirmed for m = 2, 3,
    where P* is the reversal of P at its formal degree.
    """
    r0 = reciprocal_poly(base)
    r1 = reciprocal_poly(base.attach_path(v, 1))
    p = r1 - r0
    if check:
        for m in (2, 3):
            if not growth_identity_holds(base, v, m, p):
                raise ArithmeticError("leading-polynomial identity failed")
    return p


def formal_reversal(base: Graph, p: IntPoly) -> IntPoly:
    """P* = reversal of P at degree n+1 (bipartite base) or 2n+2 (otherwise)."""
    bip, _ = base.is_bipartite()
    return p.reversal(base.n + 1 if bip else 2 * base.n + 2)


def growth_identity_holds(base: Graph, v: int, m: int, p: Optional[IntPoly] = None) -> bool:
    if p is None:
        p = reciprocal_poly(base.attach_path(v, 1)) - reciprocal_poly(base)
    y2 = _y_squared(base)
    rm = reciprocal_poly(base.attach_path(v, m))
    return (y2 - 1) * rm == (y2 ** m) * p - formal_reversal(base, p)


def leading_poly(spec: GrowthSpec, order: Optional[Sequence[int]] = None) -> IntPoly:
    """Leading polynomial over all pendant sites (internal edges must be broken first).

    Eliminates one site at a time: P[..., s] = R[..., s = 1] - R[..., s = 0].  ``order``
    permutes the elimination sequence; the result does not depend on it.
    """
    if spec.internal:
        raise ValueError("break internal sites first (GrowthSpec.broken)")
    k = spec.site_count
    order = list(range(k)) if order is None else list(order)
    if sorted(order) != list(range(k)):
        raise ValueError("order must be a permutation of the sites")
    cache: dict[tuple[int, ...], IntPoly] = {}

    def r(lengths: tuple[int, ...]) -> IntPoly:
        if lengths not in cache:
            cache[lengths] = reciprocal_poly(attach_grown(spec, lengths))
        return cache[lengths]

    def elim(depth: int, fixed: dict[int, int]) -> IntPoly:
        if depth == k:
            return r(tuple(fixed[i] for i in range(k)))
        s = order[depth]
        hi = elim(depth + 1, {**fixed, s: 1})
        lo = elim(depth + 1, {**fixed, s: 0})
        return hi - lo

    return elim(0, {})


@dataclass(frozen=True)
class PisotLimit:
    minpoly: IntPoly
    theta: RealAlgebraic
    leading: IntPoly
    certificate: PisotCertificate


def _eventually_salem(spec: GrowthSpec, lengths=SAMPLE_LENGTHS) -> None:
    for m in lengths:
        c = classify(attach_grown(spec, [m] * spec.site_count))
        if not c.is_salem:
            raise NotEventuallySalem(f"grown graph at length {m} is {c.tag}")


def pisot_limit(spec: GrowthSpec, check_salem: bool = True) -> PisotLimit:
    """Core of the leading polynomial and its root theta > 1, the limit of the Salem numbers."""
    if check_salem:
        _eventually_salem(spec)
    flat = spec.broken()
    p = leading_poly(flat)
    core, _, _ = strip_trivial_factors(p)
    core = core.primitive()
    if core.degree < 1:
        raise NotEventuallySalem("leading polynomial has no root outside the unit circle")
    cert = certify_pisot(core)
    theta = cert.theta if cert.theta is not None else unique_root_above(core, 1)
    return PisotLimit(core, theta, p, cert)


# -- bi-coloured graphs ---------------------------------------------------------------

@dataclass(frozen=True)
class PisotGraph:
    """A graph whose white vertices stand for infinitely long paths.

    Construction puts it in normal form: edges between white vertices are dropped and a
    white vertex of degree d > 1 is split into d white leaves.
    """

    graph: Graph
    white: frozenset[int] = field(default_factory=frozenset)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        white = frozenset(int(w) for w in self.white)
        for w in white:
            self.graph._check_vertex(w)
        g = self.graph
        for i, j in sorted(g.edges):
            if i in white and j in white:
                g = g.delete_edge(i, j)
        # split white vertices of degree > 1
        edges = [e for e in g.edges if e[0] not in white and e[1] not in white]
        new_white = []
        n = 0
        relabel = {}
        for v in range(g.n):
            if v not in white:
                relabel[v] = n
                n += 1
        edges = [(relabel[i], relabel[j]) for i, j in edges]
        for w in sorted(white):
            for b in g.neighbors(w):
                edges.append((relabel[b], n))
                new_white.append(n)
                n += 1
        if any(g.degree(w) == 0 for w in white):
            raise InvalidReference("isolated white vertex")
        if new_white and (g.n != n or sorted(white) != new_white):
            object.__setattr__(self, "graph", Graph(n, edges))
            object.__setattr__(self, "white", frozenset(new_white))
        else:
            object.__setattr__(self, "graph", g)
            object.__setattr__(self, "white", white)

    @property
    def black(self) -> list[int]:
        return [v for v in range(self.graph.n) if v not in self.white]

    def growth_spec(self) -> GrowthSpec:
        """Black part as the base, one growing pendant path per white leaf."""
        black = self.black
        index = {v: k for k, v in enumerate(black)}
        base = self.graph.induced_subgraph(black)
        counts: dict[int, int] = {}
        for w in self.white:
            (b,) = self.graph.neighbors(w)
            counts[index[b]] = counts.get(index[b], 0) + 1
        return GrowthSpec(base, tuple(sorted(counts.items())))

    def grown(self, m: int) -> Graph:
        spec = self.growth_spec()
        return attach_grown(spec, [m] * spec.site_count)

    def to_dict(self) -> dict:
        return {"graph": self.graph.to_dict(), "white": sorted(self.white)}

    @classmethod
    def from_dict(cls, d: dict) -> PisotGraph:
        try:
            return cls(Graph.from_dict(d["graph"]), frozenset(int(w) for w in d.get("white", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad coloured graph: {exc}") from None


def pisot_graph_quotient(pg: PisotGraph, root: int) -> RatFunc:
    """Quotient of a bi-coloured tree: white leaves contribute 1/z, black vertices recurse."""
    if root in pg.white:
        raise RootIsWhite(f"vertex {root} is white")
    t = RootedTree(pg.graph, root)
    num, den = _quotient_pair(t, pg.white)
    return RatFunc(num, den)


def pisot_number(pg: PisotGraph) -> PisotLimit:
    return pisot_limit(pg.growth_spec())


# -- named bi-coloured trees ---------------------------------------------------------------

def small_pisot_left() -> tuple[PisotGraph, int]:
    """Centre 0 with a black leaf, a black 2-path and one white leaf; root at the centre."""
    g = Graph(5, [(0, 1), (0, 2), (2, 3), (0, 4)])
    return PisotGraph(g, frozenset({4})), 0


def small_pisot_right() -> tuple[PisotGraph, int]:
    """Centre 0 with one black leaf and two white leaves; root at the centre."""
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    return PisotGraph(g, frozenset({2, 3})), 0


def _bit_below() -> tuple[Graph, int, list[int]]:
    # black vertex with two white leaves: quotient 1/(z-1)
    return Graph(3, [(0, 1), (0, 2)]), 0, [1, 2]


def _white_above() -> tuple[Graph, int, list[int]]:
    # four black vertices in a path ending in a white leaf: quotient 1/z, as for a white leaf
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]), 0, [4]


def _bit_above() -> tuple[Graph, int, list[int]]:
    # nine black vertices in a path with white leaves at both ends, rooted in the middle
    g = Graph(11, [(i, i + 1) for i in range(10)])
    return g, 5, [0, 10]


def bertin_family(k: int, direction: str = "below", extra_white: bool = False) -> tuple[PisotGraph, int]:
    """Centre joined to k copies of a bit with quotient 1/(z-1), plus optionally one piece
    with quotient 1/z.  The root quotient is (z-1)/(z^2-kz-1), or (z-1)/(z(z-k-1)) with the
    extra piece.  ``below`` uses the 3-vertex bit and a white leaf; ``above`` uses the
    11-vertex and 5-vertex pieces, which have the same quotients.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if direction not in ("below", "above"):
        raise ValueError("direction is 'below' or 'above'")
    bit = _bit_below() if direction == "below" else _bit_above()
    pieces = [bit] * k
    if extra_white:
        pieces.append((Graph(1), 0, [0]) if direction == "below" else _white_above())
    edges = []
    white = []
    offset = 1
    for g, r, ws in pieces:
        edges.extend((i + offset, j + offset) for i, j in g.edges)
        edges.append((0, r + offset))
        white.extend(w + offset for w in ws)
        offset += g.n
    note = () if direction == "below" else ("above-pieces reconstructed from their quotients",)
    return PisotGraph(Graph(offset, edges), frozenset(white), note), 0


def find_coloured_bits(n: int, target: RatFunc) -> list[tuple[Graph, int, tuple[int, ...]]]:
    """All (tree, black root, white leaves) on n vertices whose quotient equals ``target``.

    Used to reconstruct small pieces known only through their size and quotient.
    """
    import networkx as nx

    hits = []
    for t in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
        g = Graph.from_networkx(t)
        for r in range(g.n):
            rt = RootedTree(g, r)
            leaves = [v for v in range(g.n) if g.degree(v) == 1 and v != r]
            for size in range(len(leaves) + 1):
                for ws in itertools.combinations(leaves, size):
                    num, den = _quotient_pair(rt, ws)
                    if RatFunc(num, den) == target:
                        hits.append((g, r, ws))
    return hits


# -- convergence -------------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    lengths: tuple[int, ...]
    tau: object
    gap: object


@dataclass(frozen=True)
class ConvergenceReport:
    theta: RealAlgebraic
    minpoly: IntPoly
    rows: list[ConvergenceRow]
    broken_rows: list[ConvergenceRow]
    monotone: bool

    def to_csv(self, digits: int = 12) -> str:
        import mpmath

        k = len(self.rows[0].lengths) if self.rows else 0
        head = ",".join([f"m{i + 1}" for i in range(k)] + ["tau", "gap"])
        lines = [head]
        for r in self.rows:
            vals = [str(x) for x in r.lengths] + [mpmath.nstr(r.tau, digits), mpmath.nstr(r.gap, 6)]
            lines.append(",".join(vals))
        return "\n".join(lines) + "\n"


def convergence_report(spec: GrowthSpec, m_range: Iterable[int], digits: int = 20) -> ConvergenceReport:
    """Salem numbers of the grown graphs with all lengths equal to m, and their gap to theta.

    For specs with internal sites the broken family (edge cut in the middle) is reported
    alongside; both converge to the same theta.
    """
    import mpmath

    lim = pisot_limit(spec, check_salem=False)
    with mpmath.workdps(digits + 10):
        theta = lim.theta.approx(digits + 5)
        rows = _series(spec, m_range, theta, digits)
        broken_rows = []
        if spec.internal:
            flat = spec.broken()
            same_mode = flat.base.is_bipartite()[0] == spec.base.is_bipartite()[0]
            broken_rows = _series(flat, m_range, theta, digits)
            if not same_mode:
                rows = [ConvergenceRow(r.lengths, r.tau**2, abs(r.tau**2 - theta)) for r in rows]
    taus = [r.tau for r in rows]
    monotone = all(a <= b for a, b in zip(taus, taus[1:]))
    return ConvergenceReport(lim.theta, lim.minpoly, rows, broken_rows, monotone)


def _series(spec: GrowthSpec, m_range, theta, digits: int) -> list[ConvergenceRow]:
    rows = []
    for m in m_range:
        lengths = tuple([m] * spec.site_count)
        c = classify(attach_grown(spec, lengths))
        if not c.is_salem:
            raise NotEventuallySalem(f"lengths {lengths} give {c.tag}")
        t = c.tau.approx(digits + 5)
        rows.append(ConvergenceRow(lengths, t, abs(t - theta)))
    return rows
