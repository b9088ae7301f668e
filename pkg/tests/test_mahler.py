import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from salemforge.families import FamilySpec, build, parse_family
from salemforge.graph import cycle_graph, path_graph
from salemforge.graphgen import connected_graphs
from salemforge.mahler import (
    CSV_HEADER,
    classify_small_measure,
    compare_with_rho,
    expected_small_measure_specs,
    graph_mahler,
    graph_mahler_direct,
    in_small_measure_list,
    limit_family_check,
    product_bound_check,
    small_pisot_check,
    sweep_small_graphs,
    tq_name,
)
from salemforge.measure import mahler_measure
from salemforge.poly import IntPoly
from salemforge.salem import classify

from conftest import graphs, numpy_mahler

RHO_F = (1 + 5**0.5) / 2


def fam(s):
    return parse_family(s).build()


def M(s):
    return graph_mahler(fam(s)).measure


# -- single measures ---------------------------------------------------------------------

@pytest.mark.parametrize("name", ["E6", "E7", "E8", "~E8", "~D(7)", "Cycle(9)", "Path(12)", "Star(4)"])
def test_cyclotomic_graphs_have_measure_one(name):
    r = graph_mahler(fam(name))
    assert r.measure == 1 and r.eigs_gt_2 == 0 and not r.is_salem


def test_printed_anchor_values():
    assert abs(M("T(1,2,6)") - mpmath.mpf("1.176280818")) < 1e-8
    assert abs(M("T(1,2,9)") - mpmath.mpf("1.280638156")) < 1e-8
    assert abs(M("T(1,3,4)") - mpmath.mpf("1.280638156")) < 1e-8
    assert abs(M("T(1,3,6)") - mpmath.mpf("1.401268368")) < 1e-8
    assert abs(M("T(1,4,4)") - mpmath.mpf("1.401268368")) < 1e-8


def test_equal_measure_pairs():
    assert abs(M("T(1,2,9)") - M("T(1,3,4)")) < 1e-10
    assert abs(M("T(1,3,6)") - M("T(1,4,4)")) < 1e-10


def test_t233_and_q3133():
    assert compare_with_rho(fam("T(2,3,3)")) == -1
    q = graph_mahler(fam("Q(3,13,3)"))
    assert q.eigs_gt_2 == 2 and not q.is_salem
    assert compare_with_rho(fam("Q(3,13,3)")) == -1
    assert compare_with_rho(fam("Q(3,14,3)")) == 1


def test_q3133_regression_value():
    # computed, not printed anywhere: kept as a regression constant
    assert abs(M("Q(3,13,3)") - mpmath.mpf("1.57160213161018")) < 1e-12
    assert M("Q(3,13,3)") < (1 + mpmath.sqrt(5)) / 2


@given(graphs(max_n=8))
def test_measure_matches_float_eigenvalues(g):
    ref = numpy_mahler(g)
    assert abs(float(graph_mahler(g).measure) - ref) <= 1e-8 * ref


@given(graphs(max_n=8, connected=True))
def test_eigenvalue_product_matches_polynomial_measure(g):
    a = graph_mahler(g).measure
    b = graph_mahler_direct(g)
    assert abs(a - b) < 1e-10


def test_nonbipartite_paw_regression():
    paw = cycle_graph(3).add_vertex([0])
    r = graph_mahler(paw)
    assert not r.bipartite and r.is_salem
    assert abs(float(r.measure) - numpy_mahler(paw)) < 1e-10
    assert abs(r.measure - mpmath.mpf("1.5061356795538")) < 1e-12
    assert compare_with_rho(paw) == -1


def test_measure_is_at_least_one_and_one_iff_cyclotomic_exhaustive_small():
    for n in range(1, 7):
        for g in connected_graphs(n):
            r = graph_mahler(g)
            assert r.measure >= 1
            assert (r.measure == 1) == classify(g).is_cyclotomic


def test_interval_encloses_measure():
    r = graph_mahler(fam("T(1,2,6)"))
    # the reported value is the midpoint rounded to working precision
    assert abs(r.measure - mpmath.mpf(r.interval.mid)) < 1e-15
    assert mpmath.mpf(r.interval.delta.b) < 1e-20


# -- monotonicity ------------------------------------------------------------------------

@pytest.mark.parametrize("axis", [0, 1, 2])
def test_t_measure_increases_in_each_arm(axis):
    for a in range(1, 4):
        for b in range(2, 6):
            for c in range(3, 9):
                p = [a, b, c]
                m0 = M("T({},{},{})".format(*p))
                if m0 <= 1:
                    continue
                p[axis] += 1
                assert M("T({},{},{})".format(*p)) > m0


def test_only_small_measures_below_1_3():
    ms = [M(f"T(1,2,{c})") for c in range(6, 11)]
    assert all(a < b for a, b in zip(ms, ms[1:])) and ms[-1] < 1.3
    assert M("T(1,2,11)") > 1.3


# -- search --------------------------------------------------------------------------------

def test_small_measure_list_membership():
    assert in_small_measure_list(FamilySpec("T", (2, 3, 3)))
    assert in_small_measure_list(FamilySpec("Q", (3, 13, 3)))
    assert not in_small_measure_list(FamilySpec("Q", (3, 14, 3)))
    assert not in_small_measure_list(FamilySpec("T", (2, 3, 4)))


def test_search_small_bounds_matches_small_measure_list():
    hits = classify_small_measure(max_arm=14, max_end=5, sweep_vertices=0)
    assert not any(h.flags for h in hits)
    assert {h.spec for h in hits} == expected_small_measure_specs(14, 5)
    for h in hits:
        assert 1 < h.measure < RHO_F
        assert h.is_salem == (h.spec != "Q(3,13,3)")


def test_sweep_bipartite_hits_are_listed_trees():
    hits = sweep_small_graphs(9)
    bip = [h for h in hits if h.bipartite]
    assert bip
    for h in bip:
        spec = parse_family(h.spec)
        assert in_small_measure_list(spec)
    # every listed tree on at most 9 vertices is found
    names = {h.spec for h in bip}
    for s in expected_small_measure_specs(9, 9):
        if build(parse_family(s)).n <= 9:
            assert s in names


def test_sweep_reports_nonbipartite_graphs_below_rho():
    hits = sweep_small_graphs(6)
    odd = [h for h in hits if not h.bipartite]
    assert any(h.spec == "G4:0-1;0-2;0-3;1-3" for h in odd)
    for h in odd:
        assert 1 < h.measure < RHO_F


def test_tq_name():
    assert tq_name(fam("T(3,1,2)")) == "T(1,2,3)"
    assert tq_name(fam("Q(2,4,3)")) == "Q(2,4,3)"
    assert tq_name(cycle_graph(5)) is None


def test_csv_row():
    r = graph_mahler(fam("T(1,2,6)"), spec="T(1,2,6)")
    row = r.csv_row()
    assert len(row) == len(CSV_HEADER)
    assert row[0] == "T(1,2,6)" and row[2] == 1 and row[3] == "true"
    assert row[4] == "1 1 0 -1 -1 -1 -1 -1 0 1 1"


# -- bounds and limits ---------------------------------------------------------------------

def test_product_bound_q3_20_3():
    ok, lhs, rhs = product_bound_check(3, 20, 3, 10)
    t129 = M("T(1,2,9)")
    assert ok and abs(rhs - t129 * t129) < 1e-10 and rhs > RHO_F


def test_product_bound_q4_10_4():
    ok, lhs, rhs = product_bound_check(4, 10, 4, 5)
    assert ok and abs(rhs - M("T(1,3,4)") ** 2) < 1e-10 and rhs > RHO_F


def test_product_bound_trivial_for_cyclotomic_pieces():
    ok, lhs, rhs = product_bound_check(2, 4, 2, 2)
    assert ok and rhs == 1


@given(st.integers(2, 4), st.integers(5, 14), st.integers(2, 5), st.data())
def test_product_bound_always_holds(a, b, c, data):
    k = data.draw(st.integers(2, b - 2))
    assert product_bound_check(a, b, c, k)[0]


def test_limit_t12c_is_plastic_number():
    chk = limit_family_check("T1bc", 2, horizon=30)
    assert chk.direction == "increasing"
    assert abs(chk.target_measure - mahler_measure(IntPoly([-1, -1, 0, 1]))) < 1e-15
    gaps = [chk.target_measure - m for _, m in chk.sequence if m > 1]
    assert all(g > 0 for g in gaps) and all(a > b for a, b in zip(gaps, gaps[1:]))
    assert chk.gap < 1e-4


def test_limit_t22c_is_golden_ratio():
    chk = limit_family_check("T22c", 0, horizon=30)
    assert abs(chk.target_measure - RHO_F) < 1e-12
    assert chk.gap < 1e-4


def test_limit_q2b5():
    chk = limit_family_check("Q2bc", 5, horizon=30)
    assert chk.target_poly == IntPoly([0, 0, 0, 0, 1]) * IntPoly([-1, -1, 1]) + IntPoly([1])
    assert chk.gap < 1e-4


def test_limit_horizon_guard():
    with pytest.raises(ValueError):
        limit_family_check("T1bc", 2, horizon=5)


def test_small_pisot_check():
    rep = small_pisot_check(n_max=10, horizon=20)
    fam_entries = rep["family"]
    assert all(e.is_pisot for e in fam_entries)
    assert abs(fam_entries[0].theta - mpmath.mpf("1.324717957244746")) < 1e-14
    thetas = [e.theta for e in fam_entries]
    assert all(a < b for a, b in zip(thetas, thetas[1:])) and thetas[-1] < RHO_F
    assert all(e.is_pisot for e in rep["excluded"])
    # numpy oracle for the first excluded polynomial
    roots = np.roots([1, -2, 1, 0, -1, 1, -1])
    assert sum(abs(r) > 1 for r in roots) == 1
