"""
Exact real-root counting and isolation.

Two exact counters live here:

* ``sturm_count`` works for any polynomial and counts distinct roots.
* ``count_roots_above`` applies Descartes' rule of signs after a Taylor shift.  It is
  exact (with multiplicity) only for real-rooted polynomials, which is the case for
  every characteristic polynomial of a graph and every trace polynomial used here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import mpmath

from .poly import IntPoly, squarefree_part

Bound = Union[int, Fraction, float, None]

INF = math.inf


def _as_bound(x) -> Optional[Fraction | float]:
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            return x
        return Fraction(x)
    return Fraction(x)


# -- Sturm sequences -----------------------------------------------------------

@lru_cache(maxsize=4096)
def sturm_sequence(p: IntPoly) -> tuple[IntPoly, ...]:
    """Sturm chain p, p', -rem(...), ... using positively scaled pseudo-remainders."""
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        _, r, m = a.pseudo_divmod(b)
        # prem = lead(b)^m * a mod b; make the scaling factor positive
        if b.lead < 0 and m % 2 == 1:
            r = -r
        if not r:
            break
        r = -r
        g = r.content()
        seq.append(IntPoly([c // g for c in r.coeffs]))
    return tuple(seq)


def _sign_variations(signs) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        s = 1 if s > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def _signs_at(seq, x) -> list[int]:
    if x == INF:
        return [(q.lead > 0) - (q.lead < 0) for q in seq]
    if x == -INF:
        return [((q.lead > 0) - (q.lead < 0)) * (-1 if q.degree % 2 else 1) for q in seq]
    return [q.sign_at(x) for q in seq]


def sturm_count(p: IntPoly, a: Bound, b: Bound) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b].

    ``a`` may be ``-inf`` and ``b`` may be ``+inf`` (or ``None`` for either).
    """
    if not p:
        raise ValueError("sturm_count of the zero polynomial")
    a = -INF if a is None else _as_bound(a)
    b = INF if b is None else _as_bound(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    if seq[-1].degree > 0:
        # repeated roots: the chain vanishes identically at them, so count on the squarefree part
        seq = sturm_sequence(squarefree_part(p))
    return _sign_variations(_signs_at(seq, a)) - _sign_variations(_signs_at(seq, b))


# -- Descartes counting for real-rooted polynomials ------------------------------

def count_roots_above(p: IntPoly, t: Bound) -> int:
    """Roots of the real-rooted polynomial p strictly greater than t, with multiplicity."""
    if t is None or t == -INF:
        return p.degree
    if t == INF:
        return 0
    t = Fraction(t)
    num, den = t.numerator, t.denominator
    # P(y) = den^d p(y/den) has integer coefficients; p(x + t) ~ P(den*x + num)
    q = p.scale_var(1, den) if den != 1 else p
    q = q.taylor_shift(num)
    k = q.trailing_zeros()
    return _sign_variations(q.coeffs[k:])


def count_roots_between(p: IntPoly, a: Bound, b: Bound) -> int:
    """Roots of real-rooted p in (a, b] with multiplicity; None means -inf for a, +inf for b."""
    return count_roots_above(p, a) - (0 if b is None else count_roots_above(p, b))


def _split_point(p: IntPoly, l: Fraction, h: Fraction) -> Fraction:
    # a point strictly inside (l, h) that is not a root of p
    k = 2
    while True:
        m = l + (h - l) / k if k > 2 else (l + h) / 2
        if p.sign_at(m) != 0:
            return m
        k += 1


def _nudge_lower(p: IntPoly, l: Fraction, h: Fraction) -> Fraction:
    # move l up so that p(l) != 0 without losing any root of (l, h]
    if p.sign_at(l) != 0:
        return l
    step = (h - l) / 2
    while count_roots_between(p, l, l + step):
        step /= 2
    return l + step


def cauchy_bound(p: IntPoly) -> Fraction:
    """Every root satisfies |x| < bound."""
    lc = abs(p.lead)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lc)


def isolate_real_rooted(p: IntPoly, a: Bound, b: Bound) -> list[tuple[Fraction, Fraction, int]]:
    """Isolate the distinct roots of a real-rooted p in (a, b].

    Returns sorted triples ``(lo, hi, mult)``: exactly one distinct root, of multiplicity
    ``mult``, lies in (lo, hi], and p changes sign across the interval when mult is odd.
    """
    bound = cauchy_bound(p)
    lo = -bound if a is None or a == -INF else Fraction(a)
    hi = bound if b is None or b == INF else Fraction(b)
    lo = max(lo, -bound)
    hi = min(hi, bound)
    if lo >= hi:
        return []
    sqf = None
    total = count_roots_between(p, lo, hi)
    out: list[tuple[Fraction, Fraction, int]] = []
    stack = [(lo, hi, total)]
    while stack:
        l, h, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((l, h, 1))
            continue
        if h - l < Fraction(1, 2**24):
            # several roots packed together: decide with the square-free part
            if sqf is None:
                sqf = squarefree_part(p)
            if count_roots_between(sqf, l, h) == 1:
                out.append((l, h, c))
                continue
        m = _split_point(p, l, h)
        cl = count_roots_between(p, l, m)
        stack.append((m, h, c - cl))
        stack.append((l, m, cl))
    out.sort()
    if not any(mult > 1 for _, _, mult in out):
        return [(_nudge_lower(p, l, h), h, mult) for l, h, mult in out]
    # narrow multiple roots until the square-free part brackets them alone
    if sqf is None:
        sqf = squarefree_part(p)
    fixed = []
    for l, h, mult in out:
        if mult > 1:
            while count_roots_between(sqf, l, h) > 1:
                m = _split_point(sqf, l, h)
                if count_roots_between(sqf, l, m):
                    h = m
                else:
                    l = m
        fixed.append((l, h, mult))
    out = fixed
    return [(_nudge_lower(p, l, h), h, mult) for l, h, mult in out]


# -- real algebraic numbers --------------------------------------------------------

@dataclass(frozen=True)
class RealAlgebraic:
    """A real root of ``minpoly`` pinned down by the interval (lo, hi].

    ``minpoly`` is a square-free integer polynomial vanishing at the number and changing
    sign across the interval; it is the minimal polynomial whenever the caller knows one.
    """

    minpoly: IntPoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            if self.lo == self.hi and self.minpoly.sign_at(self.lo) == 0:
                return
            raise ValueError("empty isolating interval")
        slo = self.minpoly.sign_at(self.lo)
        shi = self.minpoly.sign_at(self.hi)
        if shi != 0 and slo * shi >= 0:
            raise ValueError("polynomial does not change sign across the interval")

    @classmethod
    def exact(cls, minpoly: IntPoly, value: Fraction) -> RealAlgebraic:
        return cls(minpoly, value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, eps) -> RealAlgebraic:
        """Bisect until the interval is no wider than eps; the designated root never changes."""
        eps = Fraction(eps)
        lo, hi = self.lo, self.hi
        p = self.minpoly
        if p.sign_at(hi) == 0:
            return RealAlgebraic(p, hi, hi) if lo != hi else self
        slo = p.sign_at(lo)
        while hi - lo > eps:
            m = (lo + hi) / 2
            sm = p.sign_at(m)
            if sm == 0:
                return RealAlgebraic(p, m, m)
            if sm == slo:
                lo = m
            else:
                hi = m
        return RealAlgebraic(p, lo, hi)

    def refine_fast(self, eps) -> RealAlgebraic:
        """Refine with high-precision Newton steps, then certify the bracket exactly."""
        eps = Fraction(eps)
        if self.width <= eps:
            return self
        p = self.minpoly
        if self.width > Fraction(1, 2**12):
            # a short exact bisection puts Newton in its quadratic regime
            self = self.refine(max(eps, Fraction(1, 2**12)))
            if self.width <= eps:
                return self
        dps = max(30, int(-math.log10(float(eps))) + 20) if eps > 0 else 60
        with mpmath.workdps(dps + p.degree // 4):
            coeffs = [mpmath.mpf(c) for c in reversed(p.coeffs)]
            lo_f = mpmath.mpf(self.lo.numerator) / self.lo.denominator
            hi_f = mpmath.mpf(self.hi.numerator) / self.hi.denominator
            x = (lo_f + hi_f) / 2
            tol = mpmath.mpf(10) ** (-dps)
            s_lo = mpmath.sign(mpmath.polyval(coeffs, lo_f))
            # safeguarded Newton: bisect whenever the step leaves the bracket
            for _ in range(400):
                v, dv = mpmath.polyval(coeffs, x, derivative=True)
                if v == 0:
                    break
                if mpmath.sign(v) == s_lo:
                    lo_f = x
                else:
                    hi_f = x
                nx = x - v / dv if dv != 0 else lo_f - 1
                if not lo_f < nx < hi_f:
                    nx = (lo_f + hi_f) / 2
                if abs(nx - x) < tol or hi_f - lo_f < tol:
                    x = nx
                    break
                x = nx
            else:
                return self.refine(eps)
            xf = _mpf_to_fraction(x)
        half = eps / 4
        lo, hi = xf - half, xf + half
        if self.lo <= lo and hi <= self.hi and lo < hi:
            slo, shi = p.sign_at(lo), p.sign_at(hi)
            if slo * shi < 0 or shi == 0:
                return RealAlgebraic(p, lo, hi)
        return self.refine(eps)

    def approx(self, digits: int = 17):
        """Midpoint as an mpmath number accurate to roughly ``digits`` digits."""
        r = self.refine_fast(Fraction(1, 10 ** (digits + 2)))
        with mpmath.workdps(digits + 10):
            mid = (r.lo + r.hi) / 2
            return mpmath.mpf(mid.numerator) / mid.denominator

    def interval(self, eps=Fraction(1, 10**30)) -> mpmath.ctx_iv.ivmpf:
        r = self.refine_fast(eps)
        return mpmath.iv.mpf([_frac_to_mpf_floor(r.lo), _frac_to_mpf_ceil(r.hi)])

    def __float__(self) -> float:
        return float(self.approx(20))

    def compare(self, other, max_width=Fraction(1, 10**40)) -> int:
        """-1, 0, 1 comparing with a rational or another RealAlgebraic; 0 means undecided/equal."""
        a = self
        if isinstance(other, RealAlgebraic):
            b = other
        else:
            v = Fraction(other)
            while True:
                if a.hi < v or (a.hi == v and a.lo < v and a.minpoly.sign_at(v) != 0):
                    return -1
                if a.lo >= v and not (a.lo == v and a.minpoly.sign_at(v) == 0):
                    return 1
                if a.lo == a.hi == v:
                    return 0
                if a.width < max_width:
                    return 0
                a = a.refine(a.width / 4)
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if a.width < max_width and b.width < max_width:
                return 0
            a = a.refine(a.width / 4) if a.width >= max_width else a
            b = b.refine(b.width / 4) if b.width >= max_width else b


def _mpf_to_fraction(x) -> Fraction:
    m, e = mpmath.mpf(x).man_exp
    return Fraction(int(m)) * (Fraction(2) ** int(e))


def _frac_to_mpf_floor(f: Fraction):
    return mpmath.mpf(mpmath.libmp.from_rational(f.numerator, f.denominator, mpmath.mp.prec, "f"))


def _frac_to_mpf_ceil(f: Fraction):
    return mpmath.mpf(mpmath.libmp.from_rational(f.numerator, f.denominator, mpmath.mp.prec, "c"))


def real_roots_above(p: IntPoly, t: Bound, real_rooted: bool = True) -> list[tuple[RealAlgebraic, int]]:
    """Distinct roots of p greater than t as (RealAlgebraic, multiplicity) pairs, ascending."""
    if not real_rooted:
        raise NotImplementedError("isolation here assumes a real-rooted polynomial")
    out = []
    sqf = None
    for lo, hi, mult in isolate_real_rooted(p, t, None):
        poly = p
        if mult > 1:
            if sqf is None:
                sqf = squarefree_part(p)
            poly = sqf
        out.append((RealAlgebraic(poly, lo, hi), mult))
    return out


def largest_real_root(p: IntPoly, real_rooted: bool = True) -> RealAlgebraic:
    """Largest root of a real-rooted p, found by bisecting on the count of roots above."""
    if not real_rooted:
        raise NotImplementedError("isolation here assumes a real-rooted polynomial")
    if p.degree < 1:
        raise ValueError("polynomial has no real root")
    if count_roots_above(p, 0):
        # doubling search on the positive side keeps the count tests few
        lo, hi = Fraction(0), Fraction(1)
        while count_roots_above(p, hi):
            lo, hi = hi, 2 * hi
    else:
        bound = cauchy_bound(p)
        lo, hi = -bound, Fraction(0)
    c = count_roots_above(p, lo)
    while c > 1 and hi - lo > Fraction(1, 2**24):
        mid = _split_point(p, lo, hi)
        cm = count_roots_above(p, mid)
        if cm == 0:
            hi = mid
        else:
            lo, c = mid, cm
    roots = real_roots_above(p, lo)
    return roots[-1][0]


def unique_root_above(p: IntPoly, t) -> RealAlgebraic:
    """The single root of p in (t, inf), located by sign-change bisection.

    The caller guarantees exactly one root of odd multiplicity there (e.g. a Salem core).
    """
    t = Fraction(t)
    hi = max(cauchy_bound(p), t + 1)
    lo = t
    s_hi = p.sign_at(hi)
    s_lo = p.sign_at(lo)
    if s_lo == 0:
        # nudge off an exact root at t
        eps = Fraction(1, 2**20)
        while p.sign_at(lo + eps) == 0 or (lo + eps) >= hi:
            eps /= 2
        lo = lo + eps
        s_lo = p.sign_at(lo)
    if s_lo * s_hi > 0:
        raise ValueError("no sign change above t")
    r = RealAlgebraic(p, lo, hi)
    return r.refine(Fraction(1, 2**20))
