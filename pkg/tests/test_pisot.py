import itertools

import mpmath
import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from salemforge.catalogue import parse_rooted
from salemforge.errors import InvalidReference, LengthMismatch, NotEventuallySalem, RootIsWhite
from salemforge.families import parse_family
from salemforge.graph import Graph, path_graph
from salemforge.graphgen import canonical_form
from salemforge.poly import IntPoly
from salemforge.measure import certify_pisot, mahler_measure
from salemforge.pisot import (
    GrowthSpec,
    PisotGraph,
    attach_grown,
    bertin_family,
    convergence_report,
    leading_poly,
    leading_poly_single,
    growth_identity_holds,
    pisot_graph_quotient,
    pisot_limit,
    small_pisot_left,
    small_pisot_right,
)
from salemforge.ratfunc import RatFunc
from salemforge.realroots import sturm_count
from salemforge.salem import classify, reciprocal_poly
from salemforge.spectrum import index
from salemforge.trees import RootedTree

from conftest import Z, graphs, nx_graph, to_sympy

PLASTIC = IntPoly([-1, -1, 0, 1])
GOLDEN = IntPoly([-1, -1, 1])


def tau1_tree():
    t = RootedTree.from_children([parse_rooted("D9(0)")])
    return t.graph


def arm_end(g: Graph) -> int:
    # end of the longest arm of a star-like tree
    centre = max(range(g.n), key=g.degree)
    dist = nx.single_source_shortest_path_length(nx_graph(g), centre)
    return max(range(g.n), key=lambda v: dist[v])


# -- growth ------------------------------------------------------------------------------

def test_attach_grown_single_vertex():
    spec = GrowthSpec(Graph(1), ((0, 1),))
    assert canonical_form(attach_grown(spec, [2])) == canonical_form(path_graph(3))
    with pytest.raises(LengthMismatch):
        attach_grown(spec, [2, 3])


def test_tau1_arm_growth_increases_tau():
    g = tau1_tree()
    spec = GrowthSpec(g, ((arm_end(g), 1),))
    taus = [classify(attach_grown(spec, [m])).tau.approx(20) for m in range(0, 8)]
    assert all(a < b for a, b in zip(taus, taus[1:]))


@pytest.mark.parametrize("n", [5, 6, 8])
def test_subdividing_tilde_d_keeps_index_two(n):
    g = parse_family(f"~D({n})").build()
    # the central path of ~D_n
    inner = [v for v in range(g.n) if g.degree(v) == 3]
    path = nx.shortest_path(nx_graph(g), inner[0], inner[1])
    spec = GrowthSpec(g, (), ((path[0], path[1]),))
    for m in (1, 2, 5):
        grown = attach_grown(spec, [m])
        assert index(grown).approx() == 2


# -- leading polynomials -----------------------------------------------------------------

def test_leading_poly_tau1_core_is_pisot():
    g = tau1_tree()
    p = leading_poly_single(g, arm_end(g))
    assert sturm_count(p, 1, None) == 1
    lim = pisot_limit(GrowthSpec(g, ((arm_end(g), 1),)))
    assert lim.certificate.is_pisot


def test_leading_poly_path_has_no_root_above_one():
    p = leading_poly_single(path_graph(2), 1)
    assert sturm_count(p, 1, None) == 0


def test_leading_poly_small_left():
    pg, _ = small_pisot_left()
    assert pisot_number(pg).minpoly == PLASTIC


def pisot_number(pg):
    return pisot_limit(pg.growth_spec())


@given(graphs(min_n=1, max_n=6, connected=True), st.data(), st.integers(2, 5))
def test_growth_identity(g, data, m):
    v = data.draw(st.integers(0, g.n - 1))
    assert growth_identity_holds(g, v, m)


def test_growth_identity_covers_both_modes():
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    for g in (tri, path_graph(4), tau1_tree(), tri.add_vertex([0])):
        for m in range(2, 6):
            assert growth_identity_holds(g, 0, m)


@given(graphs(min_n=2, max_n=5, connected=True), st.data())
def test_two_site_expansion(g, data):
    # R_{m1,m2} (y^2-1)^2 = sum over eps of (-1)^.. y^(..) P_eps, with the four P_eps
    # solved from four samples and checked on the rest
    v1 = data.draw(st.integers(0, g.n - 1))
    v2 = data.draw(st.integers(0, g.n - 1))
    spec = GrowthSpec(g, ((v1, 1), (v2, 1)) if v1 != v2 else ((v1, 2),))
    bip = g.is_bipartite()[0]
    y2 = Z if bip else Z**2

    def r(m1, m2):
        return sympy.expand((y2 - 1) ** 2 * to_sympy(reciprocal_poly(attach_grown(spec, [m1, m2]))).as_expr())

    samples = [(2, 2), (2, 3), (3, 2), (3, 3)]
    ps = sympy.symbols("p0:4")
    eqs = [r(m1, m2) - sum(ps[i] * y2 ** (m1 * e1 + m2 * e2) for i, (e1, e2) in enumerate(itertools.product((1, 0), repeat=2)))
           for m1, m2 in samples]
    # the system is linear in the unknown polynomials; solve it as rational functions of z
    sol = sympy.solve(eqs, ps, dict=True)[0]
    for m1, m2 in [(2, 4), (4, 3), (4, 4)]:
        pred = sum(sol[ps[i]] * y2 ** (m1 * e1 + m2 * e2) for i, (e1, e2) in enumerate(itertools.product((1, 0), repeat=2)))
        assert sympy.simplify(pred - r(m1, m2)) == 0
    # the top coefficient is the iterated leading polynomial
    assert sympy.simplify(sol[ps[0]] - to_sympy(leading_poly(spec)).as_expr()) == 0


def test_elimination_order_is_irrelevant():
    g = tau1_tree()
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    spec = GrowthSpec(g, tuple((v, 1) for v in leaves))
    ref = leading_poly(spec)
    for order in itertools.permutations(range(spec.site_count)):
        assert leading_poly(spec, order) == ref


# -- Pisot limits ------------------------------------------------------------------------

def test_small_pisot_limits():
    pg, _ = small_pisot_left()
    assert pisot_number(pg).minpoly == PLASTIC
    pg, _ = small_pisot_right()
    assert pisot_number(pg).minpoly == GOLDEN


def test_bertin_k2_limit():
    pg, _ = bertin_family(2)
    assert pisot_number(pg).minpoly == IntPoly([-1, -2, 1])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bertin_extra_white_limit(k):
    pg, _ = bertin_family(k, extra_white=True)
    assert pisot_number(pg).minpoly == IntPoly([-(k + 1), 1])


def test_limit_theta_matches_sympy_root():
    lim = pisot_number(small_pisot_left()[0])
    ref = max(r for r in sympy.real_roots(to_sympy(PLASTIC)))
    assert abs(float(lim.theta.approx(20)) - float(ref.evalf(20))) < 1e-15


def test_not_eventually_salem():
    with pytest.raises(NotEventuallySalem):
        pisot_limit(GrowthSpec(path_graph(2), ((1, 1),)))


LIMIT_SPECS = [
    lambda: small_pisot_left()[0].growth_spec(),
    lambda: small_pisot_right()[0].growth_spec(),
    lambda: bertin_family(1)[0].growth_spec(),
    lambda: GrowthSpec(tau1_tree(), ((0, 1),)),
]


@pytest.mark.parametrize("make", LIMIT_SPECS)
def test_limit_is_certified_pisot_and_not_reciprocal_quadratic(make):
    lim = pisot_limit(make())
    core = lim.minpoly
    assert sturm_count(core, 1, None) == 1
    assert sturm_count(core, None, -1) == 0
    assert lim.certificate.is_pisot
    # all other roots inside the disk: the measure is the root itself
    assert abs(mahler_measure(core) - lim.theta.approx(20)) < 1e-12
    roots = np.roots([float(c) for c in reversed(core.coeffs)])
    assert sum(abs(r) > 1 + 1e-9 for r in roots) == 1
    if core.degree == 2:
        assert not core.is_reciprocal()


# -- coloured trees ------------------------------------------------------------------------

def test_quotient_small_left():
    pg, root = small_pisot_left()
    num = IntPoly([1, 1]) * IntPoly([1, 1, 1])
    assert pisot_graph_quotient(pg, root) == RatFunc(num, PLASTIC.shift(1))


def test_quotient_small_right():
    pg, root = small_pisot_right()
    assert pisot_graph_quotient(pg, root) == RatFunc(IntPoly([1, 1]), GOLDEN)


def test_black_root_with_white_child():
    pg = PisotGraph(path_graph(2), frozenset({1}))
    assert pisot_graph_quotient(pg, 0) == RatFunc(IntPoly([1]), IntPoly([0, 1]))
    with pytest.raises(RootIsWhite):
        pisot_graph_quotient(pg, 1)


def test_normal_form():
    # white 1 has degree 2 after the white-white edge 1-3 goes
    g = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    pg = PisotGraph(g, frozenset({1, 3}))
    assert len(pg.white) == 3 and pg.graph.n == 6
    assert all(pg.graph.degree(w) == 1 for w in pg.white)
    assert not any(i in pg.white and j in pg.white for i, j in pg.graph.edges)
    with pytest.raises(InvalidReference):
        PisotGraph(path_graph(3), frozenset({1, 2}))


def _bertin_target(k, extra):
    zm1 = IntPoly([-1, 1])
    if extra:
        return RatFunc(zm1, IntPoly([-(k + 1), 1]).shift(1))
    return RatFunc(zm1, IntPoly([-1, -k, 1]))


@pytest.mark.parametrize("direction", ["below", "above"])
@pytest.mark.parametrize("extra", [False, True])
@pytest.mark.parametrize("k", range(1, 6))
def test_bertin_quotients(k, extra, direction):
    pg, root = bertin_family(k, direction, extra)
    assert pisot_graph_quotient(pg, root) == _bertin_target(k, extra)


def test_bertin_k1_pole_is_golden_ratio():
    pg, root = bertin_family(1)
    q = pisot_graph_quotient(pg, root)
    assert q.den == GOLDEN or q.den == -GOLDEN


def test_bertin_sizes_and_notes():
    pg, _ = bertin_family(5)
    assert len(pg.white) == 10
    pg, _ = bertin_family(2, extra_white=True)
    assert len(pg.white) == 5
    pg, _ = bertin_family(3, "above")
    assert pg.notes


def test_growth_spec_json_round_trip():
    spec = small_pisot_left()[0].growth_spec()
    assert GrowthSpec.from_json(spec.to_json()) == spec


# -- convergence -------------------------------------------------------------------------

def test_tau1_arm_convergence_is_monotone():
    g = tau1_tree()
    rep = convergence_report(GrowthSpec(g, ((arm_end(g), 1),)), range(1, 21))
    assert rep.monotone
    assert rep.rows[-1].gap < rep.rows[0].gap


def test_small_left_convergence_towards_plastic_number():
    spec = small_pisot_left()[0].growth_spec()
    # the grown tree is T(1,2,m); m = 5 is E8
    assert classify(attach_grown(spec, [5])).is_cyclotomic
    rep = convergence_report(spec, range(6, 31))
    assert rep.minpoly == PLASTIC
    assert rep.monotone
    assert abs(rep.theta.approx(15) - mpmath.mpf("1.324717957244746")) < 1e-14
    gaps = [r.gap for r in rep.rows]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_internal_edge_and_broken_version_share_theta():
    # T(1,2,6) with its long arm growing and one centre edge subdivided
    base = parse_family("T(1,2,6)").build()
    centre = max(range(base.n), key=base.degree)
    nb = base.neighbors(centre)[0]
    spec = GrowthSpec(base, ((arm_end(base), 1),), ((centre, nb),))
    rep = convergence_report(spec, range(10, 41, 10))
    assert rep.minpoly == IntPoly([-1, -1, -1, 1])
    assert len(rep.broken_rows) == len(rep.rows)
    last, last_b = rep.rows[-1], rep.broken_rows[-1]
    assert last.gap < 1e-8 and last_b.gap < 1e-8
    assert abs(last.tau - last_b.tau) < 1e-8
    assert [r.gap for r in rep.rows] == sorted((r.gap for r in rep.rows), reverse=True)


def test_convergence_csv():
    spec = small_pisot_right()[0].growth_spec()
    rep = convergence_report(spec, range(6, 9))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "m1,m2,tau,gap" and len(lines) == 4
