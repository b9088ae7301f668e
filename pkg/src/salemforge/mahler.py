"""Mahler measure of graphs and the search for graphs of small measure.

For a graph G on n vertices, M(G) is the Mahler measure of z^n chi(z + 1/z).  Each
eigenvalue with |lambda| > 2 contributes the root s > 1 of s + 1/s = |lambda|, so M(G) is
the product of those s, and it equals 1 exactly when G is cyclotomic.  Interlacing makes
M monotone under taking induced subgraphs.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from .cyclotomic import strip_trivial_factors
from .families import FamilySpec, build
from .graph import Graph
from .errors import InvalidFamilyParams
from .graphgen import canonical_form, hereditary_sweep
from .measure import DEFAULT_PRECISION, RHO, _digits_for, certify_pisot, mahler_measure
from .poly import IntPoly
from .realroots import RealAlgebraic, count_roots_above, real_roots_above
from .salem import classify, eigen_counts, reciprocal_poly
from .spectrum import char_poly

Z = IntPoly([0, 1])
FLAG_WIDTH = mpmath.mpf("1e-14")


@contextmanager
def _iv_dps(dps: int):
    old = mpmath.iv.dps
    mpmath.iv.dps = dps
    try:
        yield
    finally:
        mpmath.iv.dps = old


@dataclass(frozen=True)
class MeasureResult:
    spec: str
    measure: object  # mpmath.mpf
    interval: object  # mpmath interval enclosing the measure
    eigs_gt_2: int
    is_salem: bool
    minpoly: Optional[IntPoly] = None
    bipartite: bool = True
    flags: tuple[str, ...] = field(default=())

    def csv_row(self, digits: int = 12) -> list:
        """Fields in CSV_HEADER order; specs contain commas, so write these with the csv module."""
        mp = " ".join(map(str, self.minpoly.coeffs)) if self.minpoly is not None else ""
        return [self.spec, mpmath.nstr(self.measure, digits), self.eigs_gt_2, str(self.is_salem).lower(), mp]

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "spec": self.spec,
            "measure": mpmath.nstr(self.measure, digits),
            "eigs_gt_2": self.eigs_gt_2,
            "salem": self.is_salem,
            "minpoly": list(self.minpoly.coeffs) if self.minpoly is not None else None,
            "flags": list(self.flags),
        }


CSV_HEADER = ("spec", "measure", "eigs_gt_2", "salem", "minpoly")


def _s_of(lam_iv):
    # larger root of s + 1/s = lambda, for an interval lambda >= 2
    return (lam_iv + mpmath.iv.sqrt(lam_iv * lam_iv - 4)) / 2


def _floor(f: Fraction):
    return mpmath.mpf(mpmath.libmp.from_rational(f.numerator, f.denominator, mpmath.iv.prec, "f"))


def _ceil(f: Fraction):
    return mpmath.mpf(mpmath.libmp.from_rational(f.numerator, f.denominator, mpmath.iv.prec, "c"))


def measure_interval(chi: IntPoly, dps: int = 30):
    """Interval enclosing prod over |lambda| > 2 of s(lambda), from the characteristic polynomial.

    Eigenvalues are isolated exactly and refined to about ``dps`` digits before the interval
    evaluation.
    """
    eps = Fraction(1, 10 ** (dps + 2))
    with _iv_dps(dps + 10):
        total = mpmath.iv.mpf(1)
        for poly in (chi, chi.negate_var()):
            for root, mult in real_roots_above(poly, 2):
                r = root.refine_fast(eps)
                total = total * _s_of(mpmath.iv.mpf([_floor(r.lo), _ceil(r.hi)])) ** mult
        return total


def graph_mahler(g: Graph, precision=DEFAULT_PRECISION, spec: Optional[str] = None) -> MeasureResult:
    """M(G) with an enclosing interval, the number of eigenvalues > 2, and Salem status."""
    chi = char_poly(g)
    iv = measure_interval(chi, _digits_for(precision) + 5)
    gt, _ = eigen_counts(chi)
    c = classify(g) if gt else None
    salem = bool(c and c.is_salem)
    bip = g.is_bipartite()[0]
    return MeasureResult(spec or repr(g), mpmath.mpf(iv.mid), iv, gt, salem, c.minpoly if salem else None, bip)


def graph_mahler_direct(g: Graph, precision=DEFAULT_PRECISION):
    """Measure of the reciprocal polynomial: the polynomial route, used as a cross-check.

    For bipartite g the reciprocal polynomial is R_G(z) and M(R_G(z^2)) = M(R_G(z)).
    """
    return mahler_measure(reciprocal_poly(g), precision)


# -- comparison with a threshold ------------------------------------------------------------

def threshold_interval(threshold=RHO, dps: int = 40):
    """rho = (1 + sqrt 5)/2 or a decimal threshold, as an interval."""
    with _iv_dps(dps):
        if threshold is None or threshold is RHO or threshold == "rho":
            return (1 + mpmath.iv.sqrt(5)) / 2
        if isinstance(threshold, RealAlgebraic):
            r = threshold.refine_fast(Fraction(1, 10 ** (dps + 2)))
            return mpmath.iv.mpf([_floor(r.lo), _ceil(r.hi)])
        return mpmath.iv.mpf(str(threshold))


def compare_measure(chi: IntPoly, threshold=RHO) -> Optional[int]:
    """-1 or 1 as M is below or above the threshold; None when the enclosures still overlap
    after shrinking below width 1e-14 (flagged, never guessed)."""
    for dps in (20, 40, 80):
        iv = measure_interval(chi, dps)
        t = threshold_interval(threshold, dps + 10)
        if iv.b < t.a:
            return -1
        if iv.a > t.b:
            return 1
        if mpmath.mpf(iv.delta.b) < FLAG_WIDTH and mpmath.mpf(t.delta.b) < FLAG_WIDTH:
            break
    return None


def _rejection_cut(threshold) -> Fraction:
    """A rational c >= T + 1/T: any eigenvalue |lambda| >= c alone gives M >= T."""
    hi = mpmath.mpf(threshold_interval(threshold).b)
    return Fraction(mpmath.nstr(hi + 1 / hi + mpmath.mpf("1e-12"), 20))


def below_threshold(g: Graph, threshold=RHO, spec: Optional[str] = None) -> tuple[bool, Optional[MeasureResult], tuple[str, ...]]:
    """Decide 1 < M(G) < threshold; returns (decision, measure or None, flags).

    The cheap exact test comes first: one eigenvalue of modulus at least T + 1/T already
    forces M >= T (for rho this is sqrt 5).
    """
    chi = char_poly(g)
    cut = _rejection_cut(threshold)
    if count_roots_above(chi, cut) or count_roots_above(chi.negate_var(), cut):
        return False, None, ()
    gt, lt = eigen_counts(chi)
    if gt == 0 and lt == 0:
        return False, None, ()
    res = graph_mahler(g, spec=spec)
    side = compare_measure(chi, threshold)
    if side is None:
        return False, res, ("undecided at width 1e-14",)
    return side < 0, res, ()


def compare_with_rho(g: Graph) -> Optional[int]:
    return compare_measure(char_poly(g), RHO)


# -- the T/Q search ------------------------------------------------------------------------

def t_specs(max_arm: int) -> list[FamilySpec]:
    return [FamilySpec("T", (a, b, c)) for a in range(1, max_arm + 1) for b in range(a, max_arm + 1) for c in range(b, max_arm + 1)]


def q_specs(max_b: int, max_end: int) -> list[FamilySpec]:
    return [
        FamilySpec("Q", (a, b, c))
        for a in range(2, max_end + 1)
        for c in range(a, max_end + 1)
        for b in range(1, max_b + 1)
    ]


def classify_small_measure(
    max_arm: int = 30,
    max_end: int = 8,
    threshold=RHO,
    sweep_vertices: int = 9,
) -> list[MeasureResult]:
    """Graphs with 1 < M < threshold among T(a,b,c), a <= b <= c <= max_arm, Q(a,b,c),
    2 <= a <= c <= max_end, b <= max_arm, and all connected graphs on at most
    ``sweep_vertices`` vertices.  Sorted by measure, then name; each graph appears once.

    Graphs whose comparison stays undecided are included with a flag.
    """
    found: list[MeasureResult] = []
    seen = set()
    for spec in t_specs(max_arm) + q_specs(max_arm, max_end):
        g = build(spec)
        ok, res, flags = below_threshold(g, threshold, str(spec))
        if ok or flags:
            found.append(replace(res, flags=flags))
            seen.add(canonical_form(g))
    if sweep_vertices:
        for g, res in _sweep(sweep_vertices, threshold):
            if canonical_form(g) not in seen:
                found.append(res)
    found.sort(key=lambda r: (r.measure, r.spec))
    return found


def sweep_small_graphs(max_vertices: int = 9, threshold=RHO) -> list[MeasureResult]:
    """Connected graphs on at most ``max_vertices`` vertices with 1 < M < threshold."""
    return [res for _, res in _sweep(max_vertices, threshold)]


def _sweep(max_vertices: int, threshold) -> list[tuple[Graph, MeasureResult]]:
    cut = _rejection_cut(threshold)
    # M only grows when passing to a supergraph, so growing from kept graphs is complete;
    # lambda^2 >= max degree bounds the degrees
    max_deg = int(cut * cut)
    verdicts: dict = {}

    def keep(g: Graph) -> bool:
        chi = char_poly(g)
        gt, lt = eigen_counts(chi)
        if gt == 0 and lt == 0:
            return True
        ok, res, flags = below_threshold(g, threshold, _graph_label(g))
        if ok or flags:
            verdicts[canonical_form(g)] = (g, replace(res, flags=flags))
            return True
        return False

    hereditary_sweep(keep, max_vertices, max_deg)
    return list(verdicts.values())


def tq_name(g: Graph) -> Optional[str]:
    """The T(a,b,c) or Q(a,b,c) name of a tree, if it is one (a <= b <= c, resp. a <= c)."""
    if not g.is_tree():
        return None
    target = canonical_form(g)
    n = g.n
    for spec in t_specs(n) + q_specs(n, n):
        if sum(spec.params) + 1 != n:
            continue
        try:
            h = build(spec)
        except InvalidFamilyParams:
            continue
        if h.n == n and canonical_form(h) == target:
            return str(spec)
    return None


def _graph_label(g: Graph) -> str:
    name = tq_name(g)
    if name:
        return name
    return "G" + str(g.n) + ":" + ";".join(f"{i}-{j}" for i, j in g.sorted_edges())


def in_small_measure_list(spec: FamilySpec) -> bool:
    """Membership in the known list of trees with measure in (1, rho)."""
    a, b, c = spec.params
    if spec.name == "T":
        a, b, c = sorted((a, b, c))
        return (
            (a == 1 and b == 2 and c >= 6)
            or (a == 1 and b >= 3 and c >= 4)
            or (a == 2 and b == 2 and c >= 3)
            or (a, b, c) == (2, 3, 3)
        )
    if spec.name == "Q":
        if a > c:
            a, c = c, a
        return (
            (a == 2 and b >= 1 and c == 3)
            or (a == 2 and b >= 3 and 4 <= c <= b + 1)
            or (a == 3 and 4 <= b <= 13 and c == 3)
            or (a == 3 and 5 <= b <= 10 and c == 4)
            or (a == 3 and 7 <= b <= 9 and c == 5)
            or (a == 3 and 8 <= b <= 9 and c == 6)
            or (a == 4 and 7 <= b <= 8 and c == 4)
        )
    return False


def expected_small_measure_specs(max_arm: int = 30, max_end: int = 8) -> set[str]:
    return {str(s) for s in t_specs(max_arm) + q_specs(max_arm, max_end) if in_small_measure_list(s)}


# -- bounds and limits ----------------------------------------------------------------------

def star_like_measure(arms: Iterable[int]):
    from .families import star_like

    return graph_mahler(star_like([x for x in arms if x > 0])).measure


def product_bound_check(a: int, b: int, c: int, k: int, tol=mpmath.mpf("1e-10")) -> tuple[bool, object, object]:
    """M(Q(a,b,c)) >= M(T(1,a-1,k-1)) * M(T(1,c-1,b-1-k)): cutting the central path at its
    k-th vertex leaves two star-like induced subgraphs.  Returns (holds, lhs, rhs).
    """
    if not 2 <= k <= b - 2:
        raise ValueError("need 2 <= k <= b - 2")
    lhs = graph_mahler(build(FamilySpec("Q", (a, b, c)))).measure
    rhs = star_like_measure([1, a - 1, k - 1]) * star_like_measure([1, c - 1, b - 1 - k])
    return bool(lhs >= rhs - tol), lhs, rhs


@dataclass(frozen=True)
class LimitCheck:
    family: str
    sequence: list
    target_poly: IntPoly
    target_measure: object
    gap: object
    direction: str  # "increasing", "decreasing" or "mixed"


def limit_family_check(family: str, param: int, horizon: int = 30, start: Optional[int] = None) -> LimitCheck:
    """Measures along a one-parameter family against the measure of its limit polynomial.

    ``T1bc``: T(1,param,c) as c grows, target z^param (z^2-z-1) + 1.
    ``T22c``: T(2,2,c) as c grows, target z^2 - z - 1 (param ignored).
    ``Q2bc``: Q(2,b,param) as b grows, target z^(param-1) (z^2-z-1) + 1.
    """
    if horizon < 10:
        raise ValueError("horizon must be at least 10")
    golden = IntPoly([-1, -1, 1])
    if family == "T1bc":
        specs = [FamilySpec("T", (1, param, c)) for c in range(max(param, start or param), horizon + 1)]
        target = Z**param * golden + 1
    elif family == "T22c":
        specs = [FamilySpec("T", (2, 2, c)) for c in range(start or 2, horizon + 1)]
        target = golden
    elif family == "Q2bc":
        specs = [FamilySpec("Q", (2, b, param)) for b in range(start or max(1, param - 1), horizon + 1)]
        target = Z ** (param - 1) * golden + 1
    else:
        raise ValueError(f"unknown family {family!r}")
    seq = [(str(s), graph_mahler(build(s)).measure) for s in specs]
    tm = mahler_measure(target)
    vals = [m for _, m in seq]
    if all(x <= y for x, y in zip(vals, vals[1:])):
        direction = "increasing"
    elif all(x >= y for x, y in zip(vals, vals[1:])):
        direction = "decreasing"
    else:
        direction = "mixed"
    return LimitCheck(family, seq, target, tm, abs(tm - vals[-1]), direction)


@dataclass(frozen=True)
class SmallPisotEntry:
    poly: IntPoly
    core: IntPoly
    is_pisot: bool
    margin_ok: bool
    theta: object
    limit: Optional[LimitCheck] = None


def small_pisot_check(n_max: int = 10, horizon: int = 30) -> dict:
    """Pisot certificates for z^n (z^2-z-1) + 1, n = 2..n_max, each with the family
    T(1,n,c) whose measures tend to it, and for z^6-2z^5+z^4-z^2+z-1 and
    z^n (z^2-z-1) + z^2 - 1, n = 2..n_max."""
    golden = IntPoly([-1, -1, 1])

    def entry(p: IntPoly, limit: Optional[LimitCheck] = None) -> SmallPisotEntry:
        core, _, _ = strip_trivial_factors(p)
        core = core.primitive()
        cert = certify_pisot(core)
        theta = cert.theta.approx(20) if cert.theta is not None else None
        return SmallPisotEntry(p, core, cert.is_pisot, cert.margin_ok, theta, limit)

    family = [entry(Z**n * golden + 1, limit_family_check("T1bc", n, max(horizon, n + 10))) for n in range(2, n_max + 1)]
    excluded = [entry(IntPoly.parse("z^6 - 2z^5 + z^4 - z^2 + z - 1"))]
    excluded += [entry(Z**n * golden + Z**2 - 1) for n in range(2, n_max + 1)]
    return {"family": family, "excluded": excluded}
