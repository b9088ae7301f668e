"""Reciprocal polynomials of graphs and the Salem-graph decision procedure."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .cyclotomic import strip_trivial_factors
from .errors import (
    ColorClassViolation,
    InvalidBaseGraph,
    NotCyclotomicComponent,
    NotSalemError,
    PreconditionViolated,
)
from .graph import Graph
from .poly import IntPoly, chebyshev_substitute
from .realroots import RealAlgebraic, count_roots_above, largest_real_root, unique_root_above
from .spectrum import char_poly

CYCLOTOMIC = "Cyclotomic"
SALEM_TRIVIAL = "SalemTrivial"
SALEM_NONTRIVIAL = "SalemNontrivial"
NOT_SALEM = "NotSalem"


@dataclass(frozen=True)
class SalemClassification:
    tag: str
    bipartite: bool
    eigs_gt_2: int
    eigs_lt_minus_2: int
    tau: Optional[RealAlgebraic] = None
    minpoly: Optional[IntPoly] = None
    reciprocal: Optional[IntPoly] = None
    index: Optional[RealAlgebraic] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def is_salem(self) -> bool:
        return self.tag in (SALEM_TRIVIAL, SALEM_NONTRIVIAL)

    @property
    def is_cyclotomic(self) -> bool:
        return self.tag == CYCLOTOMIC

    def to_dict(self, digits: int = 12) -> dict:
        import mpmath

        out: dict = {
            "tag": self.tag,
            "counts": {
                "eigs_gt_2": self.eigs_gt_2,
                "eigs_lt_minus_2": self.eigs_lt_minus_2,
                "bipartite": self.bipartite,
            },
        }
        if self.index is not None:
            lam = self.index.refine(Fraction(1, 10 ** (digits + 2)))
            out["lambda_interval"] = [_fmt(lam.lo, digits + 2), _fmt(lam.hi, digits + 2)]
        if self.tau is not None:
            out["tau"] = {
                "minpoly": list(self.minpoly.coeffs),
                "approx": mpmath.nstr(self.tau.approx(digits + 5), digits),
            }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _fmt(x: Fraction, digits: int) -> str:
    import mpmath

    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def reciprocal_poly(g: Graph) -> IntPoly:
    """z^n chi(z + 1/z), or z^(n/2) chi(sqrt z + 1/sqrt z) when g is bipartite."""
    if g.n == 0:
        raise ValueError("empty graph")
    chi = char_poly(g)
    bip, _ = g.is_bipartite()
    return chebyshev_substitute(chi, "halved" if bip else "plain")


def eigen_counts(chi: IntPoly) -> tuple[int, int]:
    """(eigenvalues > 2, eigenvalues < -2), with multiplicity."""
    return count_roots_above(chi, 2), count_roots_above(chi.negate_var(), 2)


def classify(g: Graph) -> SalemClassification:
    """Exact classification into Cyclotomic / SalemTrivial / SalemNontrivial / NotSalem.

    For a disconnected graph each component is classified; the union counts as Salem when
    exactly one component is Salem and all others are cyclotomic, and a note says so.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    comps = g.components()
    if len(comps) > 1:
        return _classify_union(g, [g.induced_subgraph(c) for c in comps])
    return _classify_connected(g)


def _classify_union(g: Graph, parts: list[Graph]) -> SalemClassification:
    results = [_classify_connected(h) for h in parts]
    bip, _ = g.is_bipartite()
    gt = sum(r.eigs_gt_2 for r in results)
    lt = sum(r.eigs_lt_minus_2 for r in results)
    salem = [r for r in results if r.is_salem]
    others_cyclo = all(r.is_cyclotomic for r in results if not r.is_salem)
    note = f"disconnected: {len(parts)} components"
    if all(r.is_cyclotomic for r in results):
        return SalemClassification(CYCLOTOMIC, bip, 0, 0, notes=(note,))
    if len(salem) == 1 and others_cyclo:
        s = salem[0]
        return SalemClassification(
            s.tag, bip, gt, lt, s.tau, s.minpoly, reciprocal_poly(g), s.index,
            notes=(note, "one Salem component, the rest cyclotomic"),
        )
    return SalemClassification(NOT_SALEM, bip, gt, lt, notes=(note,))


def _classify_connected(g: Graph) -> SalemClassification:
    chi = char_poly(g)
    bip, _ = g.is_bipartite()
    gt, lt = eigen_counts(chi)
    if gt == 0 and lt == 0:
        return SalemClassification(CYCLOTOMIC, bip, 0, 0)
    salem = gt == 1 and (lt == 1 if bip else lt == 0)
    lam = largest_real_root(chi)
    if not salem:
        return SalemClassification(NOT_SALEM, bip, gt, lt, index=lam)
    triv = _trivial_quadratic(g, chi, bip)
    recip = chebyshev_substitute(chi, "halved" if bip else "plain")
    if triv is not None:
        return SalemClassification(SALEM_TRIVIAL, bip, gt, lt, unique_root_above(triv, 1), triv, recip, lam)
    core, _, _ = strip_trivial_factors(recip)
    core = core.primitive()
    # every root of the core other than tau and 1/tau lies on the unit circle, so a factor
    # avoiding tau would be cyclotomic by Kronecker's theorem: the core is irreducible
    return SalemClassification(SALEM_NONTRIVIAL, bip, gt, lt, unique_root_above(core, 1), core, recip, lam)


def _trivial_quadratic(g: Graph, chi: IntPoly, bip: bool) -> Optional[IntPoly]:
    """z^2 - lambda z + 1 or z^2 - (lambda^2 - 2) z + 1 when the relevant quantity is an integer."""
    dmax = g.max_degree()
    if not bip:
        for k in range(3, dmax + 1):
            if chi(k) == 0:
                return IntPoly([1, -k, 1])
        return None
    e = chi.trailing_zeros()
    psi = IntPoly(chi.coeffs[e::2])  # chi = x^e psi(x^2)
    for s in range(5, dmax * dmax + 1):
        if psi(s) == 0:
            return IntPoly([1, -(s - 2), 1])
    return None


def is_trivial(g: Graph) -> bool:
    chi = char_poly(g)
    if count_roots_above(chi, 2) != 1:
        raise PreconditionViolated("is_trivial needs exactly one eigenvalue > 2")
    bip, _ = g.is_bipartite()
    return _trivial_quadratic(g, chi, bip) is not None


def tau(g: Graph) -> RealAlgebraic:
    c = classify(g)
    if not c.is_salem:
        raise NotSalemError(f"graph is {c.tag}")
    return c.tau


# -- constructions ----------------------------------------------------------------

def construct_bipartite_salem(forest: list[Graph], attachments: list[Iterable[int]]) -> Graph:
    """Join one new vertex to chosen vertices of a cyclotomic bipartite forest.

    ``attachments[i]`` lists vertices of ``forest[i]``; within each component they must all
    lie in one colour class, so the result stays bipartite.
    """
    if len(forest) != len(attachments):
        raise ValueError("one attachment list per forest member")
    union = Graph(0)
    targets: list[int] = []
    for h, att in zip(forest, attachments):
        att = list(att)
        bip, colour = h.is_bipartite()
        if not bip:
            raise NotCyclotomicComponent("forest member is not bipartite")
        if not classify(h).is_cyclotomic:
            raise NotCyclotomicComponent("forest member is not cyclotomic")
        for comp in h.components():
            cs = {colour[v] for v in att if v in comp}
            if len(cs) > 1:
                raise ColorClassViolation("attachment vertices span both colour classes of a component")
        for v in att:
            h._check_vertex(v)
        targets.extend(v + union.n for v in att)
        union = union.disjoint_union(h)
    return union.add_vertex(targets)


def _is_path_or_cycle(h: Graph) -> bool:
    degs = h.degrees()
    if h.n == 1:
        return True
    if h.m == h.n - 1:
        return max(degs) <= 2
    return h.m == h.n and all(d == 2 for d in degs)


def construct_line_salem(h: Graph) -> Graph:
    """Line graph of one or two disjoint paths/cycles plus one extra edge."""
    for e in h.sorted_edges():
        rest = h.delete_edge(*e)
        parts = rest.component_graphs()
        if len(parts) <= 2 and all(_is_path_or_cycle(p) for p in parts):
            return h.line_graph()
    raise InvalidBaseGraph("base must be one or two paths or cycles plus a single extra edge")


def vertex_count_bound(g: Graph) -> tuple[bool, dict]:
    """High-degree and leaf counts against B = 10(3 L^4 + L^2 + 1) for a rational L >= index."""
    lam = largest_real_root(char_poly(g)).refine(Fraction(1, 2**20))
    L = lam.hi
    b = 10 * (3 * L**4 + L**2 + 1)
    degs = g.degrees()
    high = sum(1 for d in degs if d > 2)
    leaves = sum(1 for d in degs if d == 1)
    ok = high <= b and leaves <= L * L * b
    return ok, {"bound": b, "high_degree": high, "leaves": leaves}
