import mpmath
import numpy as np
import pytest
import sympy

from salemforge.errors import NotSalemError, ParseError
from salemforge.table import (
    TABLE,
    TableRow,
    base_consistency,
    build_recipe,
    check_table,
    evaluate_recipe,
    lookup,
    parse_forest,
)
from salemforge.trees import TypeA, TypeB, TypeAResult, TypeBResult

from conftest import LEHMER, Z, to_sympy


@pytest.fixture(scope="module")
def checks():
    return check_table()


def test_every_row_is_salem(checks):
    assert len(checks) == len(TABLE) == 39
    for c in checks:
        assert c.result.classification.is_salem, c.row.label


def test_rows_sharing_a_base_agree(checks):
    for i, spread in base_consistency(checks).items():
        assert spread < mpmath.mpf(10) ** -25, i


def test_bases_increase_with_index(checks):
    bases = {}
    for c in checks:
        bases[c.row.index] = c.base
    keys = sorted(bases)
    assert all(bases[a] < bases[b] for a, b in zip(keys, keys[1:]))


def test_first_row_is_lehmer(checks):
    r = checks[0].result
    assert r.minpoly == LEHMER
    assert abs(r.tau.approx(20) - mpmath.mpf("1.176280818")) < 1e-8


def test_index_one_bases_are_roots_of_lehmer():
    with mpmath.workdps(40):
        for c in check_table(digits=40):
            if c.row.index == 1:
                assert abs(mpmath.polyval([int(x) for x in reversed(LEHMER.coeffs)], c.base)) < 1e-30


def test_minpoly_matches_numpy_roots(checks):
    # the Salem number is the only root of its minimal polynomial outside the unit circle
    for c in checks:
        p = c.result.minpoly
        roots = np.roots([float(x) for x in reversed(p.coeffs)])
        big = [r for r in roots if abs(r) > 1 + 1e-7]
        assert len(big) == 1
        assert abs(big[0].real - float(c.result.tau.approx(20))) < 1e-7


def test_power_relations():
    t1 = evaluate_recipe("D9(0)").tau.approx(30)
    t1sq = evaluate_recipe("D11(3,8)").tau.approx(30)
    assert abs(t1sq - t1**2) < 1e-10
    a = evaluate_recipe("E6(1);E6(1)").tau.approx(30)
    b = evaluate_recipe("E6(1);~E8(7)").tau.approx(30)
    assert abs(a - b ** (mpmath.mpf(2) / 3)) < 1e-8


def test_square_root_minpoly():
    r = evaluate_recipe("E6(1);E6(1)")
    sq = r.square_root_minpoly
    assert sq is not None
    with mpmath.workdps(40):
        s = mpmath.sqrt(r.tau.approx(40))
        assert abs(mpmath.polyval([int(x) for x in reversed(sq.coeffs)], s)) < 1e-30
    assert sympy.Poly(to_sympy(sq)).is_irreducible
    assert sq == sympy_minpoly_of_sqrt(r.minpoly)


def sympy_minpoly_of_sqrt(p):
    # the factor of p(z^2) vanishing at sqrt(tau): independent route through sympy factorisation
    from salemforge.poly import IntPoly

    expr = to_sympy(p).as_expr().subs(Z, Z**2)
    root = max(sympy.Poly(to_sympy(p)).nroots(n=30), key=lambda x: abs(x))
    s = sympy.sqrt(root)
    for f, _ in sympy.factor_list(expr)[1]:
        if abs(f.subs(Z, s).evalf(30)) < 1e-20:
            q = IntPoly([int(c) for c in reversed(sympy.Poly(f, Z).all_coeffs())])
            return q if q.lead > 0 else -q
    raise AssertionError("no factor")


def test_type_b_table_decompositions():
    r = evaluate_recipe("A1(1,1),D10(0);A1(1,1),D10(0)")
    assert isinstance(r.decomposition, TypeB)
    r = evaluate_recipe("D9(0)")
    assert isinstance(r.decomposition, TypeA)


def test_recipe_kinds():
    assert isinstance(build_recipe("D9(0)"), TypeAResult)
    assert isinstance(build_recipe("E8(7);E8(7)"), TypeBResult)
    assert evaluate_recipe("E8(7);E8(7)").kind == "b"


def test_recipe_errors():
    with pytest.raises(ParseError):
        build_recipe("D9(0);E6(1);E6(1)")
    with pytest.raises(NotSalemError):
        evaluate_recipe("A2(1,2),A2(1,2)")


def test_parse_forest_keeps_nested_commas():
    f = parse_forest("A1(1,1), D10(0)")
    assert len(f) == 2 and f[0].graph.n == 1


def test_lookup():
    assert lookup("tau5^2") == TableRow(5, 2, "E6(1);E6(1)")
    assert lookup("E6(1); E6(1)").label == "tau5^2"
    assert lookup("tau99") is None
