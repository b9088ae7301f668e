from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from salemforge.errors import InvalidFamilyParams, InvalidReference, ParseError
from salemforge.families import FamilySpec, build, parse_family
from salemforge.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from salemforge.graphgen import all_graphs, canonical_form, connected_graphs
from salemforge.poly import IntPoly
from salemforge.poly import squarefree_part
from salemforge.realroots import RealAlgebraic, count_roots_above, isolate_real_rooted, sturm_count
from salemforge.spectrum import (
    char_poly,
    char_poly_faddeev,
    char_poly_interpolated,
    count_eigs,
    count_eigs_with_multiplicity,
    index,
)

from conftest import graphs, numpy_eigs, nx_graph, sympy_charpoly


def fam(s):
    return parse_family(s).build()


# -- construction ----------------------------------------------------------------------

def test_path3():
    assert fam("Path(3)").sorted_edges() == [(0, 1), (1, 2)]


def test_t126_is_ten_vertex_tree():
    g = fam("T(1,2,6)")
    assert g.n == 10 and g.is_tree()
    assert sorted(g.degrees()).count(3) == 1


def test_tilde_d5_shape():
    g = build(FamilySpec("tildeDn", (5,)))
    assert g.n == 6 and g.is_tree() and sorted(g.degrees()).count(3) == 2


@pytest.mark.parametrize(
    "text,n",
    [("E6", 6), ("E7", 7), ("E8", 8), ("~E6", 7), ("~E7", 8), ("~E8", 9), ("D(5)", 5), ("~D(6)", 7),
     ("~A(5)", 6), ("Star(4)", 5), ("Cycle(4)", 4), ("Q(2,1,3)", 7), ("T(2,3,3)", 9)],
)
def test_family_sizes(text, n):
    assert fam(text).n == n


def test_family_names_are_case_insensitive():
    assert fam("t(1,2,6)") == fam("T(1,2,6)")
    assert str(parse_family("q(3,13,3)")) == "Q(3,13,3)"


@pytest.mark.parametrize("bad", ["T(0,2,6)", "Path(0)", "Cycle(2)", "D(3)", "Q(1,1,3)"])
def test_invalid_family_params(bad):
    with pytest.raises(InvalidFamilyParams):
        fam(bad)


def test_unparseable_family():
    with pytest.raises(ParseError):
        parse_family("T[1,2]")


def test_graph_rejects_loops_and_bad_vertices():
    with pytest.raises((InvalidReference, ValueError)):
        Graph(3, [(0, 0)])
    with pytest.raises((InvalidReference, ValueError)):
        Graph(3, [(0, 5)])


@given(graphs(max_n=7))
def test_text_and_json_round_trip(g):
    assert Graph.parse(g.to_text()) == g
    assert Graph.parse(g.to_json()) == g


# -- characteristic polynomials --------------------------------------------------------

def test_charpoly_examples():
    assert char_poly(Graph(1)) == IntPoly([0, 1])
    assert char_poly(path_graph(2)) == IntPoly([-1, 0, 1])
    for d in range(1, 8):
        expected = IntPoly([-d, 0, 1]).shift(d - 1)
        assert char_poly(star_graph(d)) == expected


@given(graphs(max_n=8))
def test_charpoly_matches_sympy(g):
    assert char_poly(g) == sympy_charpoly(g)


@given(graphs(max_n=9))
def test_charpoly_methods_agree(g):
    p = char_poly(g)
    assert char_poly_faddeev(g) == p
    assert char_poly_interpolated(g) == p


@given(graphs(max_n=5), graphs(max_n=5))
def test_charpoly_of_union_is_product(g, h):
    assert char_poly(g.disjoint_union(h)) == char_poly(g) * char_poly(h)


# -- spectral counting -----------------------------------------------------------------

def test_count_eigs_examples():
    assert count_eigs(fam("~E8"), 2, None) == 0
    assert count_eigs(fam("T(1,2,6)"), 2, None) == 1


@given(graphs(max_n=8), st.fractions(min_value=-4, max_value=4, max_denominator=7))
def test_count_eigs_matches_numpy(g, t):
    eigs = numpy_eigs(g)
    # skip thresholds numerically too close to an eigenvalue
    if np.min(np.abs(eigs - float(t))) < 1e-6:
        return
    assert count_eigs_with_multiplicity(g, t, None) == int(np.sum(eigs > float(t)))
    distinct = np.unique(np.round(eigs[eigs > float(t)], 6))
    assert count_eigs(g, t, None) == len(distinct)


def test_bipartite_examples():
    assert cycle_graph(4).is_bipartite()[0]
    assert not cycle_graph(5).is_bipartite()[0]


@given(graphs(max_n=8))
def test_bipartite_matches_networkx(g):
    ok, colouring = g.is_bipartite()
    assert ok == nx.is_bipartite(nx_graph(g))
    if ok:
        assert all(colouring[i] != colouring[j] for i, j in g.edges)


def test_index_examples():
    assert index(path_graph(2)).approx() == 1
    assert index(star_graph(4)).approx() == 2
    lam = index(fam("T(1,2,6)")).approx(20)
    ref = max(numpy_eigs(fam("T(1,2,6)")))
    assert abs(float(lam) - ref) < 1e-10 and 2.0065 < ref < 2.0066


# -- edits -----------------------------------------------------------------------------

def test_edit_examples():
    h = path_graph(3).delete_vertex(1)
    assert h.n == 2 and h.m == 0
    assert Graph(1).attach_path(0, 2) == path_graph(3)
    assert canonical_form(path_graph(4).line_graph()) == canonical_form(path_graph(3))


def test_subdivide_and_bad_references():
    g = path_graph(2).subdivide_edge((0, 1), 2)
    assert canonical_form(g) == canonical_form(path_graph(4))
    with pytest.raises(InvalidReference):
        path_graph(3).delete_vertex(7)
    with pytest.raises(InvalidReference):
        path_graph(3).subdivide_edge((0, 2))


@given(graphs(min_n=2, max_n=7))
def test_line_graph_matches_networkx(g):
    ours = nx_graph(g.line_graph())
    ref = nx.line_graph(nx_graph(g))
    assert nx.is_isomorphic(ours, ref)


# -- properties ------------------------------------------------------------------------

def _gap_points(p: IntPoly) -> list[Fraction]:
    """Rationals hitting every open gap between consecutive distinct real roots of p (and
    both unbounded ends).  p must be real-rooted."""
    sqf = squarefree_part(p)
    ivs = [[lo, hi] for lo, hi, _ in isolate_real_rooted(sqf, None, None)]
    for i in range(len(ivs) - 1):
        if sqf.sign_at(ivs[i][1]) == 0:
            # the root sits on the shared endpoint: pull the next interval off it
            while ivs[i + 1][0] <= ivs[i][1]:
                r = RealAlgebraic(sqf, *ivs[i + 1]).refine((ivs[i + 1][1] - ivs[i + 1][0]) / 4)
                ivs[i + 1] = [r.lo, r.hi]
    pts = {x for iv in ivs for x in iv}
    if ivs:
        pts |= {ivs[0][0] - 1, ivs[-1][1] + 1}
    return sorted(pts) or [Fraction(0)]


def _interlaces(g: Graph, v: int, pg: IntPoly | None = None) -> bool:
    """Exact check that N(t) = #eigenvalues > t drops by 0 or 1 on deleting v, for all t."""
    pg = pg if pg is not None else char_poly(g)
    h = g.delete_vertex(v)
    ph = char_poly(h) if h.n else IntPoly([1])
    for t in _gap_points(pg * ph):
        cg, ch = count_roots_above(pg, t), count_roots_above(ph, t)
        if not (cg - 1 <= ch <= cg):
            return False
    return True


@pytest.mark.parametrize("n", range(2, 7))
def test_interlacing_exhaustive(n):
    for g in all_graphs(n):
        pg = char_poly(g)
        for v in range(n):
            assert _interlaces(g, v, pg)


@given(graphs(min_n=2, max_n=10))
def test_interlacing_random(g):
    assert _interlaces(g, 0)


def test_interlacing_detects_a_violation():
    # sanity of the checker: a "deletion" that removes two eigenvalues above 1 must fail
    g = complete_graph(4).disjoint_union(complete_graph(4))
    pg = char_poly(g)
    fake = char_poly(Graph(6))  # all eigenvalues 0
    assert any(not (count_roots_above(pg, t) - 1 <= count_roots_above(fake, t) <= count_roots_above(pg, t))
               for t in _gap_points(pg * fake))


@pytest.mark.parametrize("n", range(1, 9))
def test_degree_bound_exhaustive(n):
    # a root of chi at or above sqrt(max degree), checked with a rational lower bound
    for g in connected_graphs(n):
        d = g.max_degree()
        if d == 0:
            continue
        lo = Fraction(int(d**0.5 * 10**6), 10**6) - Fraction(1, 10**6)
        assert sturm_count(char_poly(g), lo, None) >= 1


@given(graphs(min_n=2, max_n=8, connected=True), st.data())
def test_proper_subgraph_has_smaller_index(g, data):
    if g.m == 0:
        return
    e = data.draw(st.sampled_from(sorted(g.edges)))
    h = g.delete_edge(*e)
    comps = [h.induced_subgraph(c) for c in h.components()]
    big = max(comps, key=lambda c: index(c).approx(20))
    assert index(big).compare(index(g)) < 0
