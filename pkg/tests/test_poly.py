from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from salemforge.cyclotomic import (
    cyclotomic,
    cyclotomic_product,
    indices_with_totient_at_most,
    strip_trivial_factors,
    totient,
)
from salemforge.errors import HalvedParityError, ParseError
from salemforge.measure import RHO, certify_pisot, mahler_measure
from salemforge.poly import IntPoly, chebyshev_substitute, poly_gcd, squarefree_decomposition
from salemforge.realroots import RealAlgebraic, largest_real_root, sturm_count
from salemforge.salem import reciprocal_poly
from salemforge.trees import RootedTree

from conftest import LEHMER, Z, from_sympy, int_polys, to_sympy


# -- IntPoly ---------------------------------------------------------------------------

def test_normalises_trailing_zeros():
    p = IntPoly([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (1, 2)
    assert IntPoly([0, 0]).degree == -1 and not IntPoly([0])


@given(int_polys(), int_polys())
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)
    assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)
    assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)


@given(int_polys(), int_polys(min_degree=1))
def test_divexact_inverts_multiplication(p, q):
    assert (p * q).divexact(q) == p


@given(int_polys(min_degree=1, max_degree=5), int_polys(min_degree=1, max_degree=5))
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    ref = sympy.gcd(to_sympy(p), to_sympy(q))
    # compare primitive parts up to sign
    g = g.primitive()
    g2 = from_sympy(ref.as_expr()).primitive()
    assert g == g2 or g == -g2


@given(int_polys(max_degree=6))
def test_text_and_json_round_trip(p):
    assert IntPoly.from_text(p.to_text()) == p
    assert IntPoly.from_json(p.to_json()) == p
    assert IntPoly.parse(p.to_string("z")) == p


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        IntPoly.parse("z^^2 + ")


def test_squarefree_decomposition():
    p = IntPoly([1, 1]) * IntPoly([1, 1]) * IntPoly([-2, 0, 1])
    parts = squarefree_decomposition(p)
    rebuilt = IntPoly([1])
    for f, m in parts:
        for _ in range(m):
            rebuilt = rebuilt * f
    assert rebuilt == p or rebuilt == -p


# -- cyclotomic ------------------------------------------------------------------------

def test_cyclotomic_examples():
    assert cyclotomic(1) == IntPoly([-1, 1])
    assert cyclotomic(12) == IntPoly([1, 0, -1, 0, 1])
    assert cyclotomic(30) == IntPoly([1, 1, 0, -1, -1, -1, 0, 1, 1])


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_matches_sympy(n):
    assert to_sympy(cyclotomic(n)) == sympy.Poly(sympy.cyclotomic_poly(n, Z), Z)
    assert cyclotomic(n).degree == totient(n) == sympy.totient(n)


def test_totient_candidates_are_complete():
    for d in (1, 2, 4, 8, 12, 20):
        got = set(indices_with_totient_at_most(d))
        assert got == {n for n in range(1, 200) if sympy.totient(n) <= d}


def test_strip_examples():
    core, facs, k = strip_trivial_factors(IntPoly([0, 0, 0, -1, 1]))
    assert core in (IntPoly([1]), IntPoly([-1])) and facs == [(1, 1)] and k == 3
    p = IntPoly([-1, -1, 1]) * IntPoly([1, 1, 1])
    core, facs, k = strip_trivial_factors(p)
    assert core == IntPoly([-1, -1, 1]) and facs == [(3, 1)] and k == 0


def test_strip_lehmer_tree():
    # root joined to D9(0): the tree T(1,2,6)
    from salemforge.catalogue import parse_rooted

    t = RootedTree.from_children([parse_rooted("D9(0)")])
    core, _, _ = strip_trivial_factors(reciprocal_poly(t.graph))
    assert core == LEHMER


@st.composite
def cyclotomic_mixtures(draw):
    facs = draw(st.lists(st.tuples(st.integers(1, 30), st.integers(1, 2)), max_size=3, unique_by=lambda t: t[0]))
    core = draw(int_polys(min_degree=1, max_degree=4))
    k = draw(st.integers(0, 3))
    return core, sorted(facs), k


@given(cyclotomic_mixtures())
def test_strip_reassembles(data):
    core0, facs, k = data
    p = core0.shift(k) * cyclotomic_product(facs)
    core, got, kk = strip_trivial_factors(p)
    assert core.shift(kk) * cyclotomic_product(got) == p


# -- Chebyshev substitution ------------------------------------------------------------

def test_chebyshev_examples():
    assert chebyshev_substitute(IntPoly([0, 1])) == IntPoly([1, 0, 1])
    assert chebyshev_substitute(IntPoly([-1, 0, 1]), "halved") == IntPoly([1, 1, 1])
    for d in range(1, 8):
        assert chebyshev_substitute(IntPoly([-d, 0, 1]), "halved") == IntPoly([1, 2 - d, 1])


def test_halved_parity_error():
    with pytest.raises(HalvedParityError):
        chebyshev_substitute(IntPoly([1, 1, 1]), "halved")


def _sympy_plain(p: IntPoly):
    x = Z + 1 / Z
    expr = sympy.expand(Z ** p.degree * sum(c * x**i for i, c in enumerate(p.coeffs)))
    return from_sympy(expr)


@given(int_polys(max_degree=7))
def test_plain_substitution_matches_sympy(p):
    assert chebyshev_substitute(p) == _sympy_plain(p)


@given(int_polys(max_degree=6), int_polys(max_degree=6))
def test_substitution_is_multiplicative(p, q):
    assert chebyshev_substitute(p * q) == chebyshev_substitute(p) * chebyshev_substitute(q)


@given(int_polys(max_degree=8))
def test_substitution_is_reciprocal(p):
    assert chebyshev_substitute(p).is_reciprocal()


def test_is_reciprocal_examples():
    assert IntPoly([1, 3, 1]).is_reciprocal()
    assert not IntPoly([-1, -1, 1]).is_reciprocal()


# -- Sturm counting --------------------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(IntPoly([-3, 0, 1]), 0, None) == 1
    assert sturm_count(IntPoly([-1, 0, 1]), 2, None) == 0
    from salemforge.families import parse_family
    from salemforge.spectrum import char_poly

    assert sturm_count(char_poly(parse_family("T(1,2,6)").build()), 2, None) == 1


@st.composite
def separated_roots(draw):
    # integer roots scaled by 1/2: separation 0.5 >= 0.1
    rs = draw(st.lists(st.integers(-12, 12), min_size=1, max_size=8, unique=True))
    return sorted(Fraction(r, 2) for r in rs)


@given(separated_roots(), st.integers(-14, 14), st.integers(1, 20))
def test_sturm_matches_dense_sampling(roots, a2, w):
    p = IntPoly([1])
    for r in roots:
        p = p * IntPoly([-r.numerator, r.denominator])
    a, b = Fraction(a2, 2) + Fraction(1, 7), Fraction(a2, 2) + Fraction(1, 7) + Fraction(w, 3)
    # oracle: sign changes of p on a fine grid between a and b
    xs = np.linspace(float(a), float(b), 4001)
    vals = np.polyval([float(c) for c in reversed(p.coeffs)], xs)
    changes = int(np.sum(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)) + int(np.sum(vals == 0))
    assert sturm_count(p, a, b) == changes == sum(1 for r in roots if a < r <= b)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=7), st.integers(-5, 4), st.integers(1, 6))
def test_sturm_with_repeated_roots_and_root_endpoints(roots, a, w):
    p = IntPoly([1])
    for r in roots:
        p = p * IntPoly([-r, 1])
    b = a + w
    assert sturm_count(p, a, b) == len({r for r in roots if a < r <= b})
    assert sturm_count(p, a, None) == len({r for r in roots if r > a})
    assert sturm_count(p, None, a) == len({r for r in roots if r <= a})


@given(int_polys(min_degree=1, max_degree=8))
def test_sturm_total_matches_sympy(p):
    assume(p.degree >= 1)
    assert sturm_count(p, None, None) == len(set(sympy.real_roots(to_sympy(p))))


# -- real algebraic numbers ------------------------------------------------------------

def test_refinement_keeps_the_root():
    r = largest_real_root(IntPoly([-2, 0, 1]))
    r2 = r.refine(Fraction(1, 10**30))
    assert r2.lo <= r.hi and r2.hi >= r.lo and r2.width <= Fraction(1, 10**30)
    with mpmath.workdps(40):
        assert abs(r2.approx(35) - mpmath.sqrt(2)) < mpmath.mpf(10) ** -30
    r3 = r.refine_fast(Fraction(1, 10**40))
    assert r3.lo <= r2.hi and r3.hi >= r2.lo


# -- Mahler measure --------------------------------------------------------------------

def test_mahler_examples():
    assert abs(mahler_measure(IntPoly([-2, 1])) - 2) < 1e-12
    assert abs(mahler_measure(LEHMER) - mpmath.mpf("1.176280818")) < 1e-8
    assert abs(mahler_measure(IntPoly([-1, -1, 0, 1])) - mpmath.mpf("1.3247179")) < 1e-6


@pytest.mark.parametrize("n", range(1, 101))
def test_mahler_of_cyclotomic_is_one(n):
    assert abs(mahler_measure(cyclotomic(n)) - 1) < 1e-12


@given(int_polys(min_degree=1, max_degree=6))
def test_mahler_matches_numpy_roots(p):
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    ref = abs(p.lead) * np.prod([max(1.0, abs(r)) for r in roots])
    assert abs(float(mahler_measure(p)) - ref) <= 1e-6 * ref


def test_pisot_certificates():
    assert certify_pisot(IntPoly([-1, -1, 0, 1])).is_pisot
    assert certify_pisot(IntPoly([-1, -1, 1])).is_pisot
    assert not certify_pisot(LEHMER).is_pisot  # Salem, roots on the circle
    # reciprocal quadratic Pisot number: the other root is 1/theta, strictly inside
    assert certify_pisot(IntPoly([1, -3, 1])).is_pisot


def test_rho_is_golden_ratio():
    with mpmath.workdps(40):
        assert abs(RHO.approx(30) - (1 + mpmath.sqrt(5)) / 2) < mpmath.mpf(10) ** -25
